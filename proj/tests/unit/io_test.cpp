#include <cmath>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "multiamdahl/config.hpp"
#include "multiamdahl/csv.hpp"
#include "multiamdahl/svg_plot.hpp"

using namespace multiamdahl;

TEST_CASE("scenario JSON round-trips") {
  for (const auto& name : preset_names()) {
    Scenario s = load_preset(name);
    s.system_power = SystemPowerSpec::fraction(0.25);
    s.dynamic_weight = 1.5;
    s.objective_kind = ObjectiveKind::kDatacenter;
    CHECK(parse_scenario_json(dump_scenario_json(s)) == s);
  }
  Scenario abs = load_preset("hpc");
  abs.system_power = SystemPowerSpec::absolute(0.3);
  CHECK(parse_scenario_json(dump_scenario_json(abs)) == abs);
}

TEST_CASE("optional keys take their defaults") {
  const Scenario s = parse_scenario_json(R"({
    "area_budget": 2,
    "units": [{"name": "CPU", "alpha": -0.5, "beta": 0.875, "efficiency": 1}],
    "workload": [1],
    "system_power": {"mode": "absolute", "value": 0.1}
  })");
  CHECK(s.area_budget == 2.0);
  CHECK(s.dynamic_weight == 1.0);
  CHECK(s.objective_kind == ObjectiveKind::kEnergy);
}

TEST_CASE("config errors name the offending field") {
  auto message = [](const std::string& text) {
    try {
      parse_scenario_json(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("{").find("malformed JSON") != std::string::npos);
  CHECK(message("[]").find("$") != std::string::npos);
  CHECK(message(R"({"area_budget": 1, "units": [{"name": "a", "alpha": "x", "beta": 1,
      "efficiency": 1}], "workload": [1], "system_power": {"mode": "absolute", "value": 0}})")
            .find("$.units[0].alpha") != std::string::npos);
  CHECK(message(R"({"area_budget": 1, "units": [], "workload": [],
      "system_power": {"mode": "watts", "value": 0}})")
            .find("$.system_power.mode") != std::string::npos);
  CHECK(message(R"({"units": [], "workload": [], "system_power": {"mode": "absolute",
      "value": 0}})")
            .find("area_budget") != std::string::npos);
}

TEST_CASE("load_scenario validates the model") {
  CHECK_THROWS_AS(load_scenario("nope"), std::exception);
  const auto dir = std::filesystem::temp_directory_path() / "multiamdahl_io_test";
  std::filesystem::create_directories(dir);
  Scenario bad = load_preset("hpc");
  bad.units[0].alpha = 0.5;
  write_text_file(dir / "bad.json", dump_scenario_json(bad));
  CHECK_THROWS_AS(load_scenario((dir / "bad.json").string()), InvalidArgument);
  write_text_file(dir / "good.json", dump_scenario_json(load_preset("multi-accel")));
  CHECK(load_scenario((dir / "good.json").string()) == load_preset("multi-accel"));
  CHECK_THROWS_AS(read_text_file(dir / "missing.json"), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("numbers print with 12 significant digits") {
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(format_number(NAN) == "nan");
  CHECK(format_number(0.0) == "0");
}

TEST_CASE("sweep CSV parses back") {
  const Scenario s = load_preset("hpc");
  const auto table = sweep_psys(s, {0.1, 0.5});
  const auto csv = sweep_csv(table);
  const auto parsed = parse_numeric_csv(csv);
  CHECK(parsed.header == std::vector<std::string>{"s", "p_sys", "CPU", "VPU", "objective",
                                                  "residual"});
  REQUIRE(parsed.rows.size() == 3);
  CHECK(parsed.rows[0][0] == 0.1);
  CHECK(parsed.rows[0][2] == doctest::Approx(table.rows[0].areas[0]).epsilon(1e-11));
  CHECK(std::isinf(parsed.rows[2][1]));
}

TEST_CASE("curve and limit CSVs have fixed headers") {
  const Scenario s = load_preset("hpc");
  const auto curves = curve_energy_vs_allocation(s, {0.1}, 16);
  const auto c = parse_numeric_csv(curve_csv(curves));
  CHECK(c.header.size() == 5);
  CHECK(c.rows.size() == 16);
  const auto limit = limit_check(s, {10, 100, 1000});
  const auto l = parse_numeric_csv(limit_csv(limit));
  CHECK(l.header == std::vector<std::string>{"p_sys", "gap"});
  CHECK(l.rows.size() == 3);
}

TEST_CASE("svg figures are well formed") {
  const Scenario hpc = load_preset("hpc");
  const auto curve = svg::energy_curves_figure(curve_energy_vs_allocation(hpc, {0.1, 0.4}, 21));
  CHECK(curve.find("<svg") != std::string::npos);
  CHECK(curve.find("</svg>") != std::string::npos);
  const auto lines = svg::allocation_lines_figure(sweep_psys(hpc, {0.1, 0.4}));
  CHECK(lines.find("<polyline") != std::string::npos);
  const auto stack = svg::allocation_stack_figure(sweep_psys(load_preset("multi-accel"), {0.1}));
  CHECK(stack.find("delay") != std::string::npos);
  CHECK(svg::xml_escape("a<b&\"c\"") == "a&lt;b&amp;&quot;c&quot;");
}
