#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "multiamdahl/model.hpp"
#include "multiamdahl/solver.hpp"

namespace multiamdahl::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,  // verify / oracle-check / limit-check ran but did not pass
  kConfigError = 2,
  kSolverError = 3,
  kIoError = 4,
};

struct RunConfig {
  std::string command;  // solve, sweep, curve, limit-check, datacenter, oracle-check, verify, dump
  std::string preset;
  std::string config_path;
  std::optional<ObjectiveKind> objective;
  std::vector<double> s_values;
  std::optional<double> psys;
  std::optional<double> w;
  std::vector<double> pconst;
  std::vector<double> ladder;
  std::vector<double> areas;
  std::optional<double> grid_step;  // absolute area units
  std::size_t points = 201;
  bool plot = false;
  std::filesystem::path out_dir = ".";
  SolverSettings settings;
};

// Throws multiamdahl::ConfigError when the config is inconsistent.
void check(const RunConfig& config);

// Runs one command and writes its artifacts under config.out_dir.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (CLI11) and calls run.
int run_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace multiamdahl::cli
