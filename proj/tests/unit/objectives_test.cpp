#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "multiamdahl/model.hpp"
#include "multiamdahl/objectives.hpp"

using namespace multiamdahl;

namespace {

Scenario single_cpu() {
  Scenario s;
  s.name = "cpu";
  s.units = {UnitModel{"CPU", -0.5, 0.875, 1.0}};
  s.workload.times = {1.0};
  return s;
}

// Central difference of the objective along unit i.
double numeric_marginal(const Scenario& s, std::vector<double> a, std::size_t i,
                        const ObjectiveSpec& spec) {
  const double h = 1e-6 * a[i];
  a[i] += h;
  const double up = evaluate(s, a, spec);
  a[i] -= 2 * h;
  const double down = evaluate(s, a, spec);
  return (up - down) / (2 * h);
}

}  // namespace

TEST_CASE("unit functions match reference values") {
  const UnitModel fft{"FFT16", -1.0, 1.25, 2804.0};
  CHECK(accel_fn_deriv(fft, 0.5) == doctest::Approx(-0.001426533523537803).epsilon(1e-13));
  CHECK(accel_fn(fft, 0.5) == doctest::Approx(2.0 / 2804.0).epsilon(1e-14));
  const UnitModel cpu{"CPU", -0.5, 0.875, 1.0};
  CHECK(power_fn(cpu, 0.25) == doctest::Approx(0.2973017787506803).epsilon(1e-14));
  CHECK_THROWS_AS(accel_fn(cpu, 0.0), InvalidArgument);
  CHECK_THROWS_AS(power_fn(cpu, -1.0), InvalidArgument);
  CHECK_THROWS_AS(accel_fn_deriv(cpu, 0.0), InvalidArgument);
}

TEST_CASE("objective values match independently computed references") {
  const Scenario multi = preset_multi_accelerator();
  const std::vector<double> uniform(5, 0.2);
  CHECK(delay_objective(multi, uniform) ==
        doctest::Approx(1.2054195467719217).epsilon(1e-13));

  const Scenario hpc = preset_hpc(0.5);
  const std::vector<double> half{0.5, 0.5};
  CHECK(energy_objective(hpc, half, 0.1) == doctest::Approx(1.05626338447064).epsilon(1e-13));

  Scenario dc = preset_hpc(0.5);
  dc.dynamic_weight = 2.0;
  const std::vector<double> split{0.4, 0.6};
  CHECK(datacenter_objective(dc, split, 0.2) ==
        doctest::Approx(2.0339867057913267).epsilon(1e-13));
}

TEST_CASE("energy marginal of a lone CPU matches the reference") {
  const Scenario s = single_cpu();
  const std::vector<double> a{0.1};
  const auto m = marginals(s, a, ObjectiveSpec::energy(0.02));
  CHECK(m.values[0] == doctest::Approx(1.2651341218403455).epsilon(1e-13));
}

TEST_CASE("datacenter with w = 1 is the energy objective bit for bit") {
  const Scenario s = preset_multi_accelerator();
  const std::vector<double> a{0.3, 0.1, 0.05, 0.15, 0.4};
  for (double p : {0.0, 0.02, 1.5, 1e4}) {
    CHECK(datacenter_objective(s, a, p) == energy_objective(s, a, p));
  }
}

TEST_CASE("datacenter objective scales with w") {
  Scenario s = preset_hpc(0.3);
  const std::vector<double> a{0.35, 0.65};
  const double base = energy_objective(s, a, 0.25);
  s.dynamic_weight = 4.0;
  CHECK(datacenter_objective(s, a, 1.0) == doctest::Approx(4.0 * base).epsilon(1e-13));
}

TEST_CASE("delay is the large-P limit of energy / P") {
  const Scenario s = preset_multi_accelerator();
  const std::vector<double> a{0.3, 0.1, 0.05, 0.15, 0.4};
  const double p = 1e9;
  CHECK(energy_objective(s, a, p) / p == doctest::Approx(delay_objective(s, a)).epsilon(1e-7));
}

TEST_CASE("evaluation rejects malformed allocations") {
  const Scenario s = preset_hpc(0.5);
  const std::vector<double> short_vec{1.0};
  const std::vector<double> zero{0.0, 1.0};
  CHECK_THROWS_AS(delay_objective(s, short_vec), InvalidArgument);
  CHECK_THROWS_AS(delay_objective(s, zero), InvalidArgument);
  const std::vector<double> ok{0.5, 0.5};
  CHECK_THROWS_AS(energy_objective(s, ok, -1.0), InvalidArgument);
}

TEST_CASE("analytic marginals agree with central differences") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> area(0.01, 1.0);
  std::uniform_real_distribution<double> power(0.0, 5.0);
  Scenario s = preset_multi_accelerator();
  s.dynamic_weight = 1.5;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(5);
    for (auto& x : a) x = area(rng);
    const double p = power(rng);
    for (const ObjectiveSpec spec :
         {ObjectiveSpec::delay(), ObjectiveSpec::energy(p), ObjectiveSpec::datacenter(p)}) {
      const auto m = marginals(s, a, spec);
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(m.values[i] == doctest::Approx(numeric_marginal(s, a, i, spec)).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("curvature is the derivative of the marginal") {
  const UnitModel unit{"CPU", -0.5, 0.875, 1.0};
  const CostWeights w{1.0, 0.3};
  for (double a : {0.01, 0.1, 0.5, 2.0}) {
    const double h = 1e-6 * a;
    const double numeric = (detail::unit_marginal(unit, 0.7, a + h, w) -
                            detail::unit_marginal(unit, 0.7, a - h, w)) /
                           (2 * h);
    CHECK(detail::unit_curvature(unit, 0.7, a, w) == doctest::Approx(numeric).epsilon(1e-6));
  }
}

TEST_CASE("convexity classification") {
  const UnitModel cpu{"CPU", -0.5, 0.875, 1.0};
  const UnitModel asic{"ASIC", -1.0, 1.25, 10.0};
  const UnitModel steep{"ASIC", -1.0, 2.5, 10.0};
  const UnitModel linear{"ASIC", -1.0, 1.0, 10.0};
  CHECK(detail::unit_cost_convex(cpu, {0.0, 1.0}));
  CHECK_FALSE(detail::unit_cost_convex(cpu, {1.0, 0.1}));
  CHECK_FALSE(detail::unit_cost_convex(asic, {1.0, 0.1}));
  CHECK(detail::unit_cost_convex(steep, {1.0, 0.1}));
  CHECK(detail::unit_cost_convex(linear, {1.0, 0.1}));
}

TEST_CASE("kkt residual ignores idle units") {
  Scenario s = preset_multi_accelerator();
  s.workload.times[3] = 0.0;
  const std::vector<double> a{0.2, 0.2, 0.2, 0.2, 0.2};
  const auto m = marginals(s, a, ObjectiveSpec::delay());
  CHECK(m.values[3] == 0.0);
  double lo = 1e300, hi = -1e300;
  for (std::size_t i : {0u, 1u, 2u, 4u}) {
    lo = std::min(lo, m.values[i]);
    hi = std::max(hi, m.values[i]);
  }
  CHECK(kkt_residual(s, a, ObjectiveSpec::delay()) == doctest::Approx(hi - lo));
}

TEST_CASE("cost weights follow the objective kind") {
  Scenario s = preset_hpc(0.5);
  s.dynamic_weight = 3.0;
  auto d = cost_weights(s, ObjectiveSpec::delay());
  CHECK(d.dynamic == 0.0);
  CHECK(d.constant == 1.0);
  auto e = cost_weights(s, ObjectiveSpec::energy(0.4));
  CHECK(e.dynamic == 1.0);
  CHECK(e.constant == 0.4);
  auto c = cost_weights(s, ObjectiveSpec::datacenter(0.4));
  CHECK(c.dynamic == 3.0);
  CHECK(c.constant == 0.4);
}
