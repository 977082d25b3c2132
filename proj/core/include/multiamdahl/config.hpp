#pragma once

// Scenario files are JSON:
//
//   {
//     "name": "my-chip",                      (optional)
//     "area_budget": 1.0,
//     "units": [{"name": "CPU", "alpha": -0.5, "beta": 0.875, "efficiency": 1}],
//     "workload": [1.0],
//     "system_power": {"mode": "fraction", "value": 0.1},
//     "w": 1.0,                               (optional, default 1)
//     "objective": "energy"                   (optional, default energy)
//   }

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "multiamdahl/model.hpp"

namespace multiamdahl {

// Malformed or unreadable scenario input. what() carries the line/field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses without validating the model invariants.
Scenario parse_scenario_json(std::string_view text);

std::string dump_scenario_json(const Scenario& scenario);

std::vector<std::string> preset_names();

// "hpc" (parallel fraction 0.5) or "multi-accel". Throws ConfigError otherwise.
Scenario load_preset(std::string_view name);

// Preset name or path to a JSON file; the result is validated and any
// violations are reported together in an InvalidArgument.
Scenario load_scenario(std::string_view source);

Scenario load_scenario_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace multiamdahl
