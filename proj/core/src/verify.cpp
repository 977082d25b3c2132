#include <algorithm>
#include <cmath>
#include <limits>

#include "multiamdahl/solver.hpp"
#include "solver_internal.hpp"

namespace multiamdahl {

namespace {

// Minimizer of t/e (d a^gamma + c a^alpha) over a > 0, ignoring the budget.
double unconstrained_minimizer(const UnitModel& unit, double time, const CostWeights& w) {
  if (time <= 0.0) return 0.0;
  const double g = unit.gamma();
  if (w.constant > 0.0) {
    if (w.dynamic > 0.0 && g > 0.0) {
      // d g a^(g-1) = c |alpha| a^(alpha-1)  =>  a^beta = c |alpha| / (d g)
      return std::pow(w.constant * -unit.alpha / (w.dynamic * g), 1.0 / unit.beta);
    }
    return std::numeric_limits<double>::infinity();
  }
  // Pure dynamic energy: shrinks toward 0 when gamma > 0, grows when gamma < 0.
  if (g > 0.0) return 0.0;
  if (g < 0.0) return std::numeric_limits<double>::infinity();
  return 0.0;
}

}  // namespace

VerificationReport verify(const Scenario& scenario, const AllocationResult& result,
                          const ObjectiveSpec& spec, const SolverSettings& settings) {
  VerificationReport report;
  const std::size_t n = scenario.size();
  const double A = scenario.area_budget;
  const double floor = settings.area_floor * A;
  const CostWeights w = cost_weights(scenario, spec);

  double sum = 0.0;
  bool above_floor = result.areas.size() == n;
  for (double a : result.areas) {
    sum += a;
    above_floor = above_floor && a >= floor * (1.0 - 1e-12);
  }
  report.feasibility_gap = std::abs(sum - A);
  report.feasible = above_floor && report.feasibility_gap <= settings.feasibility_tol * A;
  if (result.areas.size() != n) return report;

  report.boundary_pinned.assign(n, false);
  double lo = INFINITY, hi = -INFINITY, abs_sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = scenario.workload.times[i];
    const double a = result.areas[i];
    if (t <= 0.0 || detail::is_pinned(a, floor)) {
      report.boundary_pinned[i] = true;
      continue;
    }
    const double m = detail::unit_marginal(scenario.units[i], t, a, w);
    lo = std::min(lo, m);
    hi = std::max(hi, m);
    abs_sum += std::abs(m);
    ++count;
  }
  report.kkt_residual = count ? hi - lo : 0.0;
  report.mean_abs_marginal = count ? abs_sum / count : 0.0;
  report.stationary = report.kkt_residual <= settings.marginal_tol * report.mean_abs_marginal;

  for (std::size_t i = 0; i < n; ++i) {
    report.unconstrained_fill +=
        unconstrained_minimizer(scenario.units[i], scenario.workload.times[i], w);
  }

  report.solver_objective = detail::weighted_objective(scenario, result.areas, w);
  auto divisions = static_cast<std::size_t>(std::llround(1.0 / settings.oracle_grid_step));
  divisions = std::max<std::size_t>(divisions, 1);
  while (divisions > 1 && simplex_grid_size(n, divisions) > settings.oracle_max_points) {
    divisions /= 2;
  }
  const detail::GridSearch g = detail::grid_search(scenario, w, floor, divisions);
  report.oracle_objective = g.value;
  report.oracle_gap = report.solver_objective - g.value;
  // Grid resolution slack plus a few ulps of the objective.
  report.oracle_slack = g.lipschitz * g.step + 1e-12 * std::abs(g.value);
  report.oracle_ok = report.oracle_gap <= report.oracle_slack;
  return report;
}

}  // namespace multiamdahl
