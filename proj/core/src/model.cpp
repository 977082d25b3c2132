#include "multiamdahl/model.hpp"

#include <cmath>
#include <sstream>

namespace multiamdahl {

double SystemPowerSpec::resolve(double reference_power) const {
  if (mode == PowerMode::kAbsolute) return value;
  return value / (1.0 - value) * reference_power;
}

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kDelay:
      return "delay";
    case ObjectiveKind::kEnergy:
      return "energy";
    case ObjectiveKind::kDatacenter:
      return "datacenter";
  }
  return "unknown";
}

ObjectiveKind parse_objective_kind(std::string_view name) {
  if (name == "delay") return ObjectiveKind::kDelay;
  if (name == "energy") return ObjectiveKind::kEnergy;
  if (name == "datacenter") return ObjectiveKind::kDatacenter;
  throw InvalidArgument("unknown objective kind '" + std::string(name) +
                        "' (expected delay, energy or datacenter)");
}

std::vector<Violation> validate(const Scenario& scenario) {
  std::vector<Violation> out;
  auto add = [&out](std::string field, std::string rule) {
    out.push_back({std::move(field), std::move(rule)});
  };

  if (!(scenario.area_budget > 0.0) || !std::isfinite(scenario.area_budget)) {
    add("area_budget", "must be finite and > 0");
  }
  if (scenario.units.empty()) add("units", "must contain at least one unit");

  for (std::size_t i = 0; i < scenario.units.size(); ++i) {
    const UnitModel& u = scenario.units[i];
    const std::string prefix = "units[" + std::to_string(i) + "]";
    if (!(u.alpha < 0.0) || !std::isfinite(u.alpha)) {
      add(prefix + ".alpha", "must be < 0 (accelerator function strictly decreasing)");
    }
    if (!(u.beta > 0.0) || !std::isfinite(u.beta)) {
      add(prefix + ".beta", "must be > 0");
    }
    if (!(u.efficiency > 0.0) || !std::isfinite(u.efficiency)) {
      add(prefix + ".efficiency", "must be > 0");
    }
  }

  const auto& times = scenario.workload.times;
  if (times.size() != scenario.units.size()) {
    add("workload", "length " + std::to_string(times.size()) +
                        " does not match unit count " +
                        std::to_string(scenario.units.size()));
  }
  bool any_positive = false;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) {
      add("workload[" + std::to_string(i) + "]", "must be finite and >= 0");
    }
    if (times[i] > 0.0) any_positive = true;
  }
  if (!times.empty() && !any_positive) {
    add("workload", "at least one segment time must be > 0");
  }

  const SystemPowerSpec& sp = scenario.system_power;
  if (sp.mode == PowerMode::kAbsolute) {
    if (!(sp.value >= 0.0) || !std::isfinite(sp.value)) {
      add("system_power.value", "absolute power must be finite and >= 0");
    }
  } else if (!(sp.value >= 0.0 && sp.value < 1.0)) {
    add("system_power.value", "fraction must lie in [0, 1)");
  }

  if (!(scenario.dynamic_weight >= 1.0) || !std::isfinite(scenario.dynamic_weight)) {
    add("w", "dynamic weight must be finite and >= 1");
  }
  return out;
}

std::string describe(const std::vector<Violation>& violations) {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].field << ": " << violations[i].rule;
  }
  return os.str();
}

void require_valid(const Scenario& scenario) {
  const auto violations = validate(scenario);
  if (!violations.empty()) {
    throw InvalidArgument("invalid scenario: " + describe(violations));
  }
}

Scenario preset_hpc(double parallel_fraction, const HpcOptions& options) {
  if (!(parallel_fraction > 0.0 && parallel_fraction < 1.0)) {
    throw InvalidArgument("parallel fraction must lie in (0, 1)");
  }
  if (!(options.vpu_alpha >= -1.0 && options.vpu_alpha <= -0.75)) {
    throw InvalidArgument("VPU alpha must lie in [-1, -0.75]");
  }
  if (!(options.vpu_beta >= 1.0 && options.vpu_beta <= 1.25)) {
    throw InvalidArgument("VPU beta must lie in [1, 1.25]");
  }
  Scenario s;
  s.name = "hpc";
  s.area_budget = 1.0;
  s.units = {
      UnitModel{"CPU", -0.5, 0.875, 1.0},
      UnitModel{"VPU", options.vpu_alpha, options.vpu_beta, 1.0},
  };
  s.workload.times = {1.0 - parallel_fraction, parallel_fraction};
  s.system_power = SystemPowerSpec::fraction(0.0);
  s.dynamic_weight = 1.0;
  s.objective_kind = ObjectiveKind::kEnergy;
  return s;
}

Scenario preset_multi_accelerator(const MultiAcceleratorOptions& options) {
  const double a = options.accelerator_alpha;
  const double b = options.accelerator_beta;
  Scenario s;
  s.name = "multi-accel";
  s.area_budget = 1.0;
  s.units = {
      UnitModel{"CPU", -0.5, 0.875, 1.0},
      UnitModel{"DMM", a, b, 39.0},
      UnitModel{"FFT16", a, b, 2804.0},
      UnitModel{"FFT1024", a, b, 692.0},
      UnitModel{"BlackScholes", a, b, 24.0},
  };
  // Four routines of runtime 1 each; 0.1 of every routine stays on the CPU.
  constexpr double kRoutines = 4.0;
  constexpr double kCpuShare = 0.1;
  const double on_accel = 1.0 - kCpuShare;
  s.workload.times = {kRoutines * kCpuShare, on_accel, on_accel, on_accel, on_accel};
  s.system_power = SystemPowerSpec::fraction(0.0);
  s.dynamic_weight = 1.0;
  s.objective_kind = ObjectiveKind::kEnergy;
  return s;
}

}  // namespace multiamdahl
