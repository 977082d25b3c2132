#include <algorithm>
#include <string>

#include "doctest.h"
#include "multiamdahl/model.hpp"

using namespace multiamdahl;

namespace {

bool has_field(const std::vector<Violation>& v, const std::string& field) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.field == field; });
}

}  // namespace

TEST_CASE("presets are valid and shaped as documented") {
  const Scenario hpc = preset_hpc(0.5);
  CHECK(validate(hpc).empty());
  REQUIRE(hpc.size() == 2);
  CHECK(hpc.units[0].name == "CPU");
  CHECK(hpc.units[0].alpha == -0.5);
  CHECK(hpc.units[0].beta == 0.875);
  CHECK(hpc.units[1].alpha == -1.0);
  CHECK(hpc.workload.times == std::vector<double>{0.5, 0.5});

  const Scenario multi = preset_multi_accelerator();
  CHECK(validate(multi).empty());
  REQUIRE(multi.size() == 5);
  CHECK(multi.units[2].name == "FFT16");
  CHECK(multi.units[2].efficiency == 2804.0);
  CHECK(multi.units[4].efficiency == 24.0);
  CHECK(multi.workload.times[0] == doctest::Approx(0.4));
  for (std::size_t i = 1; i < 5; ++i) {
    CHECK(multi.workload.times[i] == doctest::Approx(0.9));
    CHECK(multi.units[i].beta == 1.25);
  }
}

TEST_CASE("preset arguments are range checked") {
  CHECK_THROWS_AS(preset_hpc(0.0), InvalidArgument);
  CHECK_THROWS_AS(preset_hpc(1.0), InvalidArgument);
  CHECK_THROWS_AS(preset_hpc(0.5, {-1.1, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(preset_hpc(0.5, {-1.0, 1.3}), InvalidArgument);
  CHECK_NOTHROW(preset_hpc(0.5, {-0.75, 1.25}));
}

TEST_CASE("validate reports every broken field at once") {
  Scenario s = preset_hpc(0.5);
  s.area_budget = 0.0;
  s.units[0].alpha = 0.2;
  s.units[1].beta = -1.0;
  s.units[1].efficiency = 0.0;
  s.dynamic_weight = 0.5;
  s.system_power = SystemPowerSpec::fraction(1.0);
  const auto v = validate(s);
  CHECK(has_field(v, "area_budget"));
  CHECK(has_field(v, "units[0].alpha"));
  CHECK(has_field(v, "units[1].beta"));
  CHECK(has_field(v, "units[1].efficiency"));
  CHECK(has_field(v, "w"));
  CHECK(has_field(v, "system_power.value"));
  CHECK_THROWS_AS(require_valid(s), InvalidArgument);
  CHECK(describe(v).find("units[0].alpha") != std::string::npos);
}

TEST_CASE("workload must match the units and carry some time") {
  Scenario s = preset_hpc(0.5);
  s.workload.times = {1.0};
  CHECK(has_field(validate(s), "workload"));
  s.workload.times = {0.0, 0.0};
  CHECK(has_field(validate(s), "workload"));
  s.workload.times = {-1.0, 2.0};
  CHECK(has_field(validate(s), "workload[0]"));
  s.units.clear();
  s.workload.times.clear();
  CHECK(has_field(validate(s), "units"));
}

TEST_CASE("fractional system power keeps P_sys / (P_sys + P_ref) == s") {
  for (double s : {0.0, 0.02, 0.1, 0.4, 0.95}) {
    const double ref = 3.0;
    const double p = SystemPowerSpec::fraction(s).resolve(ref);
    CHECK(p / (p + ref) == doctest::Approx(s).epsilon(1e-14));
  }
  CHECK(SystemPowerSpec::absolute(0.7).resolve(123.0) == 0.7);
  Scenario sc = preset_hpc(0.5);
  sc.area_budget = 2.0;
  sc.system_power = SystemPowerSpec::fraction(0.5);
  CHECK(sc.system_power_absolute() == doctest::Approx(2.0));
}

TEST_CASE("objective kinds round-trip through their names") {
  for (auto k : {ObjectiveKind::kDelay, ObjectiveKind::kEnergy, ObjectiveKind::kDatacenter}) {
    CHECK(parse_objective_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_objective_kind("edp"), InvalidArgument);
}
