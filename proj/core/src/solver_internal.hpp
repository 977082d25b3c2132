#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "multiamdahl/model.hpp"
#include "multiamdahl/objectives.hpp"
#include "multiamdahl/solver.hpp"

namespace multiamdahl::detail {

// Units with a_i at or below floor * (1 + kPinnedSlack) count as pinned.
inline constexpr double kPinnedSlack = 1e-6;

inline bool is_pinned(double area, double floor) {
  return area <= floor * (1.0 + kPinnedSlack);
}

double weighted_objective(const Scenario& scenario, std::span<const double> areas,
                          const CostWeights& w);

// Fills objective, lambda (mean interior marginal), residual over interior
// units with nonzero workload, and feasibility gap.
AllocationResult finalize(const Scenario& scenario, std::vector<double> areas,
                          const CostWeights& w, double floor, std::string method,
                          int iterations);

struct GridSearch {
  std::vector<double> areas;
  double value = 0.0;
  double step = 0.0;
  double lipschitz = 0.0;
  std::size_t evaluations = 0;
};

// Exhaustive search over the simplex grid with `divisions` steps.
GridSearch grid_search(const Scenario& scenario, const CostWeights& w, double floor,
                       std::size_t divisions);

AllocationResult solve_two_unit_weighted(const Scenario& scenario, const CostWeights& w,
                                         const SolverSettings& settings);

AllocationResult solve_weighted(const Scenario& scenario, const CostWeights& w,
                                const SolverSettings& settings);

}  // namespace multiamdahl::detail
