#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "multiamdahl/objectives.hpp"
#include "multiamdahl/solver.hpp"

using namespace multiamdahl;

TEST_CASE("simplex grid size counts compositions") {
  CHECK(simplex_grid_size(1, 10) == 1);
  CHECK(simplex_grid_size(2, 10) == 11);
  CHECK(simplex_grid_size(3, 4) == 15);
  CHECK(simplex_grid_size(5, 100) == 4598126);
}

TEST_CASE("oracle refuses grids above the point cap") {
  SolverSettings settings;
  settings.oracle_max_points = 1000;
  CHECK_THROWS_AS(
      brute_force_oracle(preset_multi_accelerator(), ObjectiveSpec::delay(), 0.01, settings),
      InvalidArgument);
}

TEST_CASE("oracle matches an explicit scan for two units") {
  const Scenario s = preset_hpc(0.5);
  const auto spec = ObjectiveSpec::energy(0.3);
  const auto o = brute_force_oracle(s, spec, 0.01);
  const double floor = area_floor(s);
  const double h = (s.area_budget - 2 * floor) / 100;
  double best = INFINITY;
  double best_a = 0;
  for (int k = 0; k <= 100; ++k) {
    const std::vector<double> a{floor + k * h, floor + (100 - k) * h};
    const double v = evaluate(s, a, spec);
    if (v < best) {
      best = v;
      best_a = a[0];
    }
  }
  CHECK(o.best.objective_value == best);
  CHECK(o.best.areas[0] == best_a);
  CHECK(o.grid_step == doctest::Approx(h));
  CHECK(o.evaluations == 101);
}

TEST_CASE("solver never loses to the oracle beyond its slack") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> alpha(-1.0, -0.3);
  std::uniform_real_distribution<double> beta(0.5, 1.5);
  std::uniform_real_distribution<double> power(0.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    Scenario s;
    s.name = "random";
    for (int i = 0; i < 3; ++i) {
      s.units.push_back(UnitModel{"U", alpha(rng), beta(rng), 1.0 + 10.0 * i});
      s.workload.times.push_back(0.2 + 0.3 * i);
    }
    const auto spec = ObjectiveSpec::energy(power(rng));
    const auto r = solve(s, spec);
    const auto o = brute_force_oracle(s, spec, 0.005);
    CAPTURE(trial);
    CHECK(r.objective_value <= o.best.objective_value + o.slack());
  }
}

TEST_CASE("oracle is deterministic") {
  const Scenario s = preset_multi_accelerator();
  const auto spec = ObjectiveSpec::energy(0.1);
  const auto a = brute_force_oracle(s, spec, 0.05);
  const auto b = brute_force_oracle(s, spec, 0.05);
  CHECK(a.best.areas == b.best.areas);
  CHECK(a.lipschitz == b.lipschitz);
}
