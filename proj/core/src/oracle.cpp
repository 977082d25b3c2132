#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "multiamdahl/solver.hpp"
#include "solver_internal.hpp"

namespace multiamdahl {

std::size_t simplex_grid_size(std::size_t units, std::size_t divisions) {
  // C(divisions + units - 1, units - 1), saturating.
  if (units == 0) return 0;
  const std::size_t k = units - 1;
  long double count = 1.0L;
  for (std::size_t r = 1; r <= k; ++r) {
    count = count * static_cast<long double>(divisions + r) / static_cast<long double>(r);
    if (count > static_cast<long double>(std::numeric_limits<std::size_t>::max() / 2)) {
      return std::numeric_limits<std::size_t>::max();
    }
  }
  return static_cast<std::size_t>(std::llround(count));
}

namespace detail {

GridSearch grid_search(const Scenario& scenario, const CostWeights& w, double floor,
                       std::size_t divisions) {
  const std::size_t n = scenario.size();
  const double h = (scenario.area_budget - static_cast<double>(n) * floor) /
                   static_cast<double>(divisions);
  auto area_at = [&](std::size_t k) { return floor + static_cast<double>(k) * h; };

  // cost[i][k]: unit i's term at grid coordinate k.
  std::vector<std::vector<double>> cost(n, std::vector<double>(divisions + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k <= divisions; ++k) {
      cost[i][k] = unit_cost(scenario.units[i], scenario.workload.times[i], area_at(k), w);
    }
  }

  GridSearch out;
  out.step = h;
  std::vector<std::size_t> k(n, 0), best_k(n, 0);
  double best = std::numeric_limits<double>::infinity();

  // Compositions of `divisions` in lexicographic order of k; strict
  // comparison keeps the first of equal values.
  auto visit = [&](auto&& self, std::size_t depth, std::size_t left, double partial) -> void {
    if (depth + 1 == n) {
      k[depth] = left;
      const double value = partial + cost[depth][left];
      ++out.evaluations;
      if (value < best) {
        best = value;
        best_k = k;
      }
      return;
    }
    for (std::size_t kd = 0; kd <= left; ++kd) {
      k[depth] = kd;
      self(self, depth + 1, left - kd, partial + cost[depth][kd]);
    }
  };
  visit(visit, 0, divisions, 0.0);

  out.areas.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.areas[i] = area_at(best_k[i]);
  out.value = best;

  // Local Lipschitz bound: largest objective change per unit area over
  // single-step transfers from the best grid point.
  for (std::size_t i = 0; i < n; ++i) {
    if (best_k[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double delta = cost[i][best_k[i] - 1] - cost[i][best_k[i]] +
                           cost[j][best_k[j] + 1] - cost[j][best_k[j]];
      out.lipschitz = std::max(out.lipschitz, std::abs(delta) / h);
    }
  }
  return out;
}

}  // namespace detail

OracleResult brute_force_oracle(const Scenario& scenario, const ObjectiveSpec& spec,
                                double grid_step, const SolverSettings& settings) {
  require_valid(scenario);
  settings.check();
  const double A = scenario.area_budget;
  const double floor = settings.area_floor * A;
  if (static_cast<double>(scenario.size()) * floor > A) {
    throw InvalidArgument("infeasible floor configuration: n * floor exceeds A");
  }
  if (!(grid_step > 0.0 && grid_step < A)) {
    throw InvalidArgument("grid step must lie in (0, A)");
  }
  const auto divisions = static_cast<std::size_t>(std::llround(A / grid_step));
  if (divisions == 0) throw InvalidArgument("grid step too coarse");
  const std::size_t points = simplex_grid_size(scenario.size(), divisions);
  if (points > settings.oracle_max_points) {
    throw InvalidArgument("oracle grid of " + std::to_string(points) +
                          " points exceeds the cap of " +
                          std::to_string(settings.oracle_max_points));
  }
  const CostWeights w = cost_weights(scenario, spec);
  detail::GridSearch g = detail::grid_search(scenario, w, floor, divisions);

  OracleResult out;
  out.grid_step = g.step;
  out.lipschitz = g.lipschitz;
  out.evaluations = g.evaluations;
  out.best = detail::finalize(scenario, std::move(g.areas), w, floor, "oracle", 0);
  return out;
}

}  // namespace multiamdahl
