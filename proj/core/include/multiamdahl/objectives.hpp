#pragma once

#include <span>
#include <vector>

#include "multiamdahl/model.hpp"

namespace multiamdahl {

// Smallest area any unit may be evaluated at, as a fraction of A. Accelerator
// functions diverge as a -> 0+, so evaluations below this are rejected.
inline constexpr double kAreaFloorFraction = 1e-9;

inline double area_floor(const Scenario& scenario) {
  return kAreaFloorFraction * scenario.area_budget;
}

// Which objective to evaluate and the absolute constant power that goes with
// it (P_sys for energy, P_const for datacenter, ignored for delay).
struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::kDelay;
  double power = 0.0;

  static ObjectiveSpec delay() { return {ObjectiveKind::kDelay, 0.0}; }
  static ObjectiveSpec energy(double p_sys) { return {ObjectiveKind::kEnergy, p_sys}; }
  static ObjectiveSpec datacenter(double p_const) {
    return {ObjectiveKind::kDatacenter, p_const};
  }
  // Kind and power taken from the scenario itself.
  static ObjectiveSpec from(const Scenario& scenario);
};

// Every objective in this library is separable:
//   sum_i t_i * (dynamic * a_i^beta + constant) * a_i^alpha / e_i
// delay is (0, 1), energy is (1, P_sys), datacenter is (w, P_const).
struct CostWeights {
  double dynamic = 0.0;
  double constant = 1.0;
};

CostWeights cost_weights(const Scenario& scenario, const ObjectiveSpec& spec);

struct MarginalVector {
  std::vector<double> values;
};

// f(a) = a^alpha / e, the inverted speedup.
double accel_fn(const UnitModel& unit, double area);
double accel_fn_deriv(const UnitModel& unit, double area);
// p(a) = a^beta, dynamic power.
double power_fn(const UnitModel& unit, double area);

double delay_objective(const Scenario& scenario, std::span<const double> areas);
double energy_objective(const Scenario& scenario, std::span<const double> areas,
                        double p_sys);
double datacenter_objective(const Scenario& scenario, std::span<const double> areas,
                            double p_const);
double evaluate(const Scenario& scenario, std::span<const double> areas,
                const ObjectiveSpec& spec);

MarginalVector marginals(const Scenario& scenario, std::span<const double> areas,
                         const ObjectiveSpec& spec);

// max_i m_i - min_j m_j over units with nonzero workload.
double kkt_residual(const Scenario& scenario, std::span<const double> areas,
                    const ObjectiveSpec& spec);

// Mean |m_i| over units with nonzero workload; the scale residuals are
// compared against.
double mean_abs_marginal(const Scenario& scenario, std::span<const double> areas,
                         const ObjectiveSpec& spec);

namespace detail {

// Per-unit terms of the separable objective and their first two derivatives
// in a. No argument checking; callers guarantee a > 0.
double unit_cost(const UnitModel& unit, double time, double area, const CostWeights& w);
double unit_marginal(const UnitModel& unit, double time, double area, const CostWeights& w);
double unit_curvature(const UnitModel& unit, double time, double area,
                      const CostWeights& w);

// True when unit_cost is convex on (0, inf).
bool unit_cost_convex(const UnitModel& unit, const CostWeights& w);

}  // namespace detail

}  // namespace multiamdahl
