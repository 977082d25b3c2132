#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "multiamdahl/sweep.hpp"

using namespace multiamdahl;

TEST_CASE("log spacing hits both ends") {
  const auto v = log_spaced(0.005, 0.99, 33);
  REQUIRE(v.size() == 33);
  CHECK(v.front() == doctest::Approx(0.005));
  CHECK(v.back() == doctest::Approx(0.99));
  for (std::size_t i = 1; i < v.size(); ++i) {
    CHECK(v[i] / v[i - 1] == doctest::Approx(v[1] / v[0]));
  }
}

TEST_CASE("default grid is sorted and contains the marked fractions") {
  const auto g = default_s_grid();
  CHECK(std::is_sorted(g.begin(), g.end()));
  CHECK(std::adjacent_find(g.begin(), g.end()) == g.end());
  for (double s : {0.02, 0.1, 0.4, 0.95}) {
    CHECK(std::find(g.begin(), g.end(), s) != g.end());
  }
}

TEST_CASE("sweep closes with a delay row") {
  const Scenario s = preset_hpc(0.5);
  const auto table = sweep_psys(s, {0.02, 0.1, 0.4});
  REQUIRE(table.rows.size() == 4);
  CHECK(table.rows[0].s == 0.02);
  CHECK(table.rows[2].s == 0.4);
  CHECK(table.rows.back().delay_limit);
  CHECK(table.rows.back().s == 1.0);
  CHECK(std::isinf(table.rows.back().p_sys));
  CHECK(table.unit_names == std::vector<std::string>{"CPU", "VPU"});
  for (const auto& row : table.rows) CHECK(row.ok());
  CHECK(sweep_psys(s, {0.1}, {}, false).rows.size() == 1);
  CHECK_THROWS_AS(sweep_psys(s, {0.4, 0.1}), InvalidArgument);
  CHECK_THROWS_AS(sweep_psys(s, {1.0}), InvalidArgument);
}

TEST_CASE("HPC CPU share grows with system power") {
  const auto table = sweep_psys(preset_hpc(0.5), default_s_grid());
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    CHECK(table.rows[i].areas[0] >= table.rows[i - 1].areas[0]);
  }
}

TEST_CASE("energy curves are normalized to their minimum") {
  const auto table = curve_energy_vs_allocation(preset_hpc(0.5), {0.02, 0.95}, 101);
  REQUIRE(table.curves.size() == 2);
  for (const auto& c : table.curves) {
    REQUIRE(c.normalized.size() == 101);
    CHECK(*std::min_element(c.normalized.begin(), c.normalized.end()) == 1.0);
    CHECK(c.normalized[c.argmin] == 1.0);
  }
  CHECK(table.curves[0].argmin_share() < table.curves[1].argmin_share());
  CHECK_THROWS_AS(curve_energy_vs_allocation(preset_multi_accelerator(), {0.1}, 11),
                  InvalidArgument);
}

TEST_CASE("limit check converges on both presets") {
  for (const auto& s : {preset_hpc(0.5), preset_multi_accelerator()}) {
    const auto report = limit_check(s, {10, 100, 1000, 10000});
    CHECK(report.nonincreasing);
    CHECK(report.final_gap < 0.01 * s.area_budget);
    CHECK(report.passed);
    CHECK(report.gaps.size() == 4);
  }
}

TEST_CASE("datacenter sweep is monotone in constant power") {
  const auto table = datacenter_sweep(preset_hpc(0.5), 2.0, {0.05, 0.2, 1.0, 5.0});
  REQUIRE(table.rows.size() == 4);
  CHECK(table.objective == ObjectiveKind::kDatacenter);
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    CHECK(table.rows[i].areas[0] >= table.rows[i - 1].areas[0]);
  }
  CHECK(table.rows[0].s == doctest::Approx(0.05 / 1.05));
}
