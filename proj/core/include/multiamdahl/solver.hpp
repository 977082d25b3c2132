#pragma once

// Optimal area allocation under sum(a_i) == A.
//
// Delay: closed form when every unit shares alpha, otherwise bisection on the
// Lagrange multiplier. Energy and data-center objectives: bisection on the
// multiplier over each unit's increasing-marginal branch; when that cannot
// fill the chip, or when some unit's cost is non-convex, a direct minimizer
// runs as well (golden-section for two units, pairwise coordinate descent
// seeded from a coarse simplex grid otherwise) and the lower objective wins.

#include <cstddef>
#include <vector>

#include "multiamdahl/model.hpp"
#include "multiamdahl/objectives.hpp"

namespace multiamdahl {

// Tolerances are relative to the area budget A unless noted.
struct SolverSettings {
  double feasibility_tol = 1e-9;     // |sum a - A| <= feasibility_tol * A
  double marginal_tol = 1e-6;        // relative to the mean |marginal|
  int max_iterations = 200;          // bisection steps
  double oracle_grid_step = 1.0 / 200.0;
  double area_floor = kAreaFloorFraction;
  std::size_t oracle_max_points = 200'000'000;

  // Throws InvalidArgument when a field is out of range.
  void check() const;
};

AllocationResult solve_delay(const Scenario& scenario, const SolverSettings& settings = {});

AllocationResult solve_energy(const Scenario& scenario, double p_sys,
                              const SolverSettings& settings = {});

// Minimizes sum (w p_i + P_const) f_i t_i with w taken from the scenario.
AllocationResult solve_datacenter(const Scenario& scenario, double p_const,
                                  const SolverSettings& settings = {});

// Two-unit energy problem reduced to one dimension over a_1 in
// [floor, A - floor]: 64-interval scan, golden-section in each local
// bracket, then a root polish on the marginal difference.
AllocationResult solve_two_unit(const Scenario& scenario, double p_sys,
                                const SolverSettings& settings = {});

// Dispatch on spec.kind; two-unit energy problems go through solve_two_unit.
AllocationResult solve(const Scenario& scenario, const ObjectiveSpec& spec,
                       const SolverSettings& settings = {});

struct OracleResult {
  AllocationResult best;
  double grid_step = 0.0;      // actual spacing h between grid points
  double lipschitz = 0.0;      // max |delta objective| / h over neighbor moves
  std::size_t evaluations = 0;

  double slack() const { return lipschitz * grid_step; }
};

// Exhaustive search over {a : a_i = floor + k_i h, sum k_i = K} with
// K = round(A / grid_step). First grid point in lexicographic order of k
// wins ties. Throws InvalidArgument when the grid exceeds
// settings.oracle_max_points.
OracleResult brute_force_oracle(const Scenario& scenario, const ObjectiveSpec& spec,
                                double grid_step, const SolverSettings& settings = {});

// Number of grid points brute_force_oracle would visit.
std::size_t simplex_grid_size(std::size_t units, std::size_t divisions);

struct VerificationReport {
  double feasibility_gap = 0.0;
  double kkt_residual = 0.0;        // excludes boundary-pinned units
  double mean_abs_marginal = 0.0;
  double oracle_objective = 0.0;
  double solver_objective = 0.0;
  double oracle_gap = 0.0;          // solver - oracle; <= slack expected
  double oracle_slack = 0.0;
  std::vector<bool> boundary_pinned;
  // Sum of each unit's unconstrained minimizer (inf if a unit keeps
  // improving with area). Below A means the equality constraint forces
  // area onto units that would rather shed it.
  double unconstrained_fill = 0.0;

  bool feasible = false;
  bool stationary = false;
  bool oracle_ok = false;

  bool passed() const { return feasible && stationary && oracle_ok; }
};

// Never throws for a well-formed result; failures are reported as flags.
VerificationReport verify(const Scenario& scenario, const AllocationResult& result,
                          const ObjectiveSpec& spec, const SolverSettings& settings = {});

}  // namespace multiamdahl
