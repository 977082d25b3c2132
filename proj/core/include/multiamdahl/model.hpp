#pragma once

// Domain types for area allocation across heterogeneous units: per-unit
// power-law models, the workload split, the constant system power setting,
// and the scenario that bundles them. Also the two reference scenarios
// (CPU + vector unit, and CPU + four ASIC accelerators).

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace multiamdahl {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One computational unit. Its inverted speedup is a^alpha / efficiency and
// its dynamic power is a^beta.
struct UnitModel {
  std::string name;
  double alpha = -0.5;
  double beta = 0.875;
  double efficiency = 1.0;

  double gamma() const { return alpha + beta; }

  friend bool operator==(const UnitModel&, const UnitModel&) = default;
};

// Reference-CPU execution time of each segment, aligned with the units.
struct Workload {
  std::vector<double> times;

  friend bool operator==(const Workload&, const Workload&) = default;
};

enum class PowerMode { kAbsolute, kFraction };

struct SystemPowerSpec {
  PowerMode mode = PowerMode::kAbsolute;
  double value = 0.0;

  static SystemPowerSpec absolute(double p) { return {PowerMode::kAbsolute, p}; }
  static SystemPowerSpec fraction(double s) { return {PowerMode::kFraction, s}; }

  // Absolute P_sys. A fraction s of the total budget maps to
  // s / (1 - s) * reference_power so that P_sys / (P_sys + P_ref) == s.
  double resolve(double reference_power) const;

  friend bool operator==(const SystemPowerSpec&, const SystemPowerSpec&) = default;
};

enum class ObjectiveKind { kDelay, kEnergy, kDatacenter };

std::string_view to_string(ObjectiveKind kind);
ObjectiveKind parse_objective_kind(std::string_view name);

struct Scenario {
  std::string name;
  double area_budget = 1.0;
  std::vector<UnitModel> units;
  Workload workload;
  SystemPowerSpec system_power;
  double dynamic_weight = 1.0;  // w >= 1, data-center multiplier on p_i
  ObjectiveKind objective_kind = ObjectiveKind::kEnergy;

  std::size_t size() const { return units.size(); }

  // Power that a fractional P_sys is measured against: the chip's own
  // power budget, which equals A for normalized power-law units.
  double reference_power() const { return area_budget; }

  double system_power_absolute() const {
    return system_power.resolve(reference_power());
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Result of any allocation solver. Areas are in the scenario's area units.
struct AllocationResult {
  std::vector<double> areas;
  double lambda = 0.0;
  double objective_value = 0.0;
  double max_marginal_residual = 0.0;
  double feasibility_gap = 0.0;
  std::string method;
  int iterations = 0;
};

struct Violation {
  std::string field;
  std::string rule;
};

// Every broken invariant, each naming the field and the rule. Empty iff valid.
std::vector<Violation> validate(const Scenario& scenario);

// Throws InvalidArgument listing all violations.
void require_valid(const Scenario& scenario);

std::string describe(const std::vector<Violation>& violations);

struct HpcOptions {
  double vpu_alpha = -1.0;
  double vpu_beta = 1.0;
};

// CPU (Pollack's rule, alpha=-0.5, beta=0.875) plus a massively parallel
// vector unit. The parallel fraction of reference time runs on the VPU.
Scenario preset_hpc(double parallel_fraction, const HpcOptions& options = {});

struct MultiAcceleratorOptions {
  double accelerator_alpha = -1.0;
  double accelerator_beta = 1.25;
};

// CPU plus DMM, FFT16, FFT1024 and BlackScholes ASICs. Four equal-runtime
// routines, 10% of each on the CPU; efficiencies are measured ASIC speedups.
Scenario preset_multi_accelerator(const MultiAcceleratorOptions& options = {});

}  // namespace multiamdahl
