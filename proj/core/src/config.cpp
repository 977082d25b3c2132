#include "multiamdahl/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace multiamdahl {

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(path + ": missing required key '" + key + "'");
  return *it;
}

double number(const json& value, const std::string& path) {
  if (!value.is_number()) {
    throw ConfigError(path + ": expected a number, got " + std::string(value.type_name()));
  }
  return value.get<double>();
}

std::string text(const json& value, const std::string& path) {
  if (!value.is_string()) {
    throw ConfigError(path + ": expected a string, got " + std::string(value.type_name()));
  }
  return value.get<std::string>();
}

const char* mode_name(PowerMode mode) {
  return mode == PowerMode::kFraction ? "fraction" : "absolute";
}

}  // namespace

Scenario parse_scenario_json(std::string_view input) {
  json doc;
  try {
    doc = json::parse(input.begin(), input.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("$: expected a JSON object at top level");

  Scenario s;
  if (auto it = doc.find("name"); it != doc.end()) s.name = text(*it, "$.name");
  s.area_budget = number(field(doc, "area_budget", "$"), "$.area_budget");

  const json& units = field(doc, "units", "$");
  if (!units.is_array()) throw ConfigError("$.units: expected an array");
  for (std::size_t i = 0; i < units.size(); ++i) {
    const std::string path = "$.units[" + std::to_string(i) + "]";
    const json& u = units[i];
    if (!u.is_object()) throw ConfigError(path + ": expected an object");
    UnitModel m;
    m.name = text(field(u, "name", path), path + ".name");
    m.alpha = number(field(u, "alpha", path), path + ".alpha");
    m.beta = number(field(u, "beta", path), path + ".beta");
    m.efficiency = u.contains("efficiency")
                       ? number(u["efficiency"], path + ".efficiency")
                       : 1.0;
    s.units.push_back(std::move(m));
  }

  const json& workload = field(doc, "workload", "$");
  if (!workload.is_array()) throw ConfigError("$.workload: expected an array");
  for (std::size_t i = 0; i < workload.size(); ++i) {
    s.workload.times.push_back(number(workload[i], "$.workload[" + std::to_string(i) + "]"));
  }

  if (auto it = doc.find("system_power"); it != doc.end()) {
    if (!it->is_object()) throw ConfigError("$.system_power: expected an object");
    const std::string mode = text(field(*it, "mode", "$.system_power"), "$.system_power.mode");
    if (mode == "absolute") {
      s.system_power.mode = PowerMode::kAbsolute;
    } else if (mode == "fraction") {
      s.system_power.mode = PowerMode::kFraction;
    } else {
      throw ConfigError("$.system_power.mode: expected 'absolute' or 'fraction', got '" +
                        mode + "'");
    }
    s.system_power.value =
        number(field(*it, "value", "$.system_power"), "$.system_power.value");
  }
  if (auto it = doc.find("w"); it != doc.end()) s.dynamic_weight = number(*it, "$.w");
  if (auto it = doc.find("objective"); it != doc.end()) {
    try {
      s.objective_kind = parse_objective_kind(text(*it, "$.objective"));
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("$.objective: ") + e.what());
    }
  }
  return s;
}

std::string dump_scenario_json(const Scenario& s) {
  json doc = json::object();
  if (!s.name.empty()) doc["name"] = s.name;
  doc["area_budget"] = s.area_budget;
  json units = json::array();
  for (const auto& u : s.units) {
    units.push_back({{"name", u.name},
                     {"alpha", u.alpha},
                     {"beta", u.beta},
                     {"efficiency", u.efficiency}});
  }
  doc["units"] = std::move(units);
  doc["workload"] = s.workload.times;
  doc["system_power"] = {{"mode", mode_name(s.system_power.mode)},
                         {"value", s.system_power.value}};
  doc["w"] = s.dynamic_weight;
  doc["objective"] = std::string(to_string(s.objective_kind));
  return doc.dump(2) + "\n";
}

std::vector<std::string> preset_names() { return {"hpc", "multi-accel"}; }

Scenario load_preset(std::string_view name) {
  if (name == "hpc") return preset_hpc(0.5);
  if (name == "multi-accel") return preset_multi_accelerator();
  throw ConfigError("unknown preset '" + std::string(name) + "' (expected hpc or multi-accel)");
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  Scenario s;
  try {
    s = parse_scenario_json(read_text_file(path));
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  require_valid(s);
  return s;
}

Scenario load_scenario(std::string_view source) {
  for (const auto& name : preset_names()) {
    if (source == name) return load_preset(source);
  }
  return load_scenario_file(std::filesystem::path(std::string(source)));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace multiamdahl
