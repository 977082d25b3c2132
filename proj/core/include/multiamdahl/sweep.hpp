#pragma once

// Design-space sweeps over constant system power: energy-vs-allocation
// curves for two-unit chips, optimal allocation against P_sys, the
// P_sys -> infinity limit check and the data-center P_const sweep.

#include <string>
#include <vector>

#include "multiamdahl/model.hpp"
#include "multiamdahl/solver.hpp"

namespace multiamdahl {

struct SweepRow {
  double s = 0.0;       // P_sys as a fraction of the total power budget
  double p_sys = 0.0;   // absolute P_sys (P_const for data-center sweeps)
  std::vector<double> areas;
  double objective = 0.0;
  double kkt_residual = 0.0;
  bool delay_limit = false;  // the closing delay-optimal row (s = 1, p = inf)
  std::string error;         // non-empty when this row's solve failed

  bool ok() const { return error.empty(); }
};

struct SweepTable {
  std::string scenario_name;
  ObjectiveKind objective = ObjectiveKind::kEnergy;
  std::vector<std::string> unit_names;
  double area_budget = 1.0;
  std::vector<SweepRow> rows;  // sorted by s ascending
};

struct Curve {
  double s = 0.0;
  double p_sys = 0.0;
  std::vector<double> cpu_share;   // a_CPU / A
  std::vector<double> normalized;  // energy / min energy on this curve
  std::size_t argmin = 0;

  double argmin_share() const { return cpu_share[argmin]; }
};

struct CurveTable {
  std::string scenario_name;
  std::vector<Curve> curves;
};

struct LimitReport {
  std::vector<double> p_sys;
  std::vector<double> gaps;  // max_i |a_energy,i(p) - a_delay,i|
  std::vector<double> delay_areas;
  bool nonincreasing = false;
  double final_gap = 0.0;
  bool passed = false;
};

std::vector<double> log_spaced(double lo, double hi, std::size_t count);

// 33 log-spaced fractions in [0.005, 0.99] merged with 0.02, 0.1, 0.4, 0.95.
std::vector<double> default_s_grid();

// One energy solve per s at P_sys = s / (1 - s) * P_ref, then a closing
// delay-optimal row. Rows are solved concurrently; failures are recorded on
// the row and do not abort the sweep.
SweepTable sweep_psys(const Scenario& scenario, const std::vector<double>& s_values,
                      const SolverSettings& settings = {}, bool include_delay_row = true);

// Two-unit only. Samples a_CPU uniformly over [floor, A - floor].
CurveTable curve_energy_vs_allocation(const Scenario& scenario,
                                      const std::vector<double>& s_values,
                                      std::size_t n_points,
                                      const SolverSettings& settings = {});

LimitReport limit_check(const Scenario& scenario, const std::vector<double>& p_sys_ladder,
                        const SolverSettings& settings = {});

// Data-center objective sum (w p_i + P_const) f_i t_i per P_const. The s
// column reports P_const / (P_const + P_ref).
SweepTable datacenter_sweep(const Scenario& scenario, double w,
                            const std::vector<double>& p_const_values,
                            const SolverSettings& settings = {});

}  // namespace multiamdahl
