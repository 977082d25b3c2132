#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli/run.hpp"
#include "doctest.h"
#include "multiamdahl/config.hpp"
#include "multiamdahl/csv.hpp"

using namespace multiamdahl;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "multiamdahl");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::run_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("multiamdahl_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("solve writes one row in the sweep schema") {
  const auto dir = scratch("solve");
  const auto r = invoke({"solve", "--preset", "multi-accel", "--objective", "delay", "--out",
                         dir.string()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("solve[delay]") != std::string::npos);
  const auto csv = parse_numeric_csv(read_text_file(dir / "solve.csv"));
  CHECK(csv.header.front() == "s");
  CHECK(csv.header.back() == "residual");
  REQUIRE(csv.rows.size() == 1);
  CHECK(csv.rows[0][0] == 1.0);
  fs::remove_all(dir);
}

TEST_CASE("sweep with --plot writes the matching figure") {
  const auto two = scratch("sweep2");
  CHECK(invoke({"sweep", "--preset", "hpc", "--s", "0.02,0.1", "--plot", "--out", two.string()})
            .code == cli::kOk);
  CHECK(fs::exists(two / "sweep.csv"));
  CHECK(fs::exists(two / "fig4.svg"));
  const auto five = scratch("sweep5");
  CHECK(invoke({"sweep", "--preset", "multi-accel", "--s", "0.1", "--plot", "--out",
                five.string()})
            .code == cli::kOk);
  CHECK(fs::exists(five / "fig6.svg"));
  fs::remove_all(two);
  fs::remove_all(five);
}

TEST_CASE("curve, limit-check and datacenter produce their tables") {
  const auto dir = scratch("misc");
  CHECK(invoke({"curve", "--preset", "hpc", "--plot", "--points", "32", "--out", dir.string()})
            .code == cli::kOk);
  CHECK(fs::exists(dir / "fig3.svg"));
  CHECK(invoke({"limit-check", "--preset", "hpc", "--out", dir.string()}).code == cli::kOk);
  CHECK(fs::exists(dir / "limit.csv"));
  CHECK(invoke({"datacenter", "--preset", "hpc", "--w", "2", "--pconst", "0.1,1", "--out",
                dir.string()})
            .code == cli::kOk);
  CHECK(parse_numeric_csv(read_text_file(dir / "datacenter.csv")).rows.size() == 2);
  fs::remove_all(dir);
}

TEST_CASE("oracle-check reports the gap and passes on a coarse grid") {
  const auto dir = scratch("oracle");
  const auto r = invoke({"oracle-check", "--preset", "hpc", "--s", "0.1,0.4", "--grid-step",
                         "0.001", "--out", dir.string()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("oracle_gap=") != std::string::npos);
  CHECK(parse_numeric_csv(read_text_file(dir / "oracle.csv")).rows.size() == 2);
  fs::remove_all(dir);
}

TEST_CASE("verify fails a poor allocation with a check exit code") {
  const auto dir = scratch("verify");
  const auto r = invoke({"verify", "--preset", "hpc", "--s", "0.1", "--areas", "0.5,0.5", "--out",
                         dir.string()});
  CHECK(r.code == cli::kCheckFailed);
  CHECK(r.out.find("FAIL") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("dump writes a loadable scenario") {
  const auto dir = scratch("dump");
  CHECK(invoke({"dump", "--preset", "multi-accel", "--out", dir.string()}).code == cli::kOk);
  const auto loaded = load_scenario((dir / "scenario.json").string());
  CHECK(loaded == load_preset("multi-accel"));
  const auto r = invoke({"solve", "--config", (dir / "scenario.json").string(), "--s", "0.1",
                         "--out", dir.string()});
  CHECK(r.code == cli::kOk);
  fs::remove_all(dir);
}

TEST_CASE("bad input maps to the config exit code") {
  CHECK(invoke({"solve"}).code == cli::kConfigError);
  CHECK(invoke({"solve", "--preset", "hpc", "--config", "x.json"}).code == cli::kConfigError);
  CHECK(invoke({"solve", "--preset", "nope"}).code == cli::kConfigError);
  CHECK(invoke({"solve", "--preset", "hpc", "--objective", "edp"}).code == cli::kConfigError);
  CHECK(invoke({"frobnicate"}).code == cli::kConfigError);
  const auto r = invoke({"solve", "--preset", "hpc", "--w", "0.5"});
  CHECK(r.code == cli::kConfigError);
  CHECK(r.err.find("w") != std::string::npos);
}

TEST_CASE("an unwritable output directory maps to the i/o exit code") {
  const auto dir = scratch("io");
  fs::create_directories(dir);
  write_text_file(dir / "file", "x");
  const auto r = invoke({"solve", "--preset", "hpc", "--out", (dir / "file" / "sub").string()});
  CHECK(r.code == cli::kIoError);
  fs::remove_all(dir);
}
