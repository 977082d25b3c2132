#include "multiamdahl/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace multiamdahl {

namespace {

void check_positive_area(double area) {
  if (!(area > 0.0) || !std::isfinite(area)) {
    throw InvalidArgument("area must be finite and > 0, got " + std::to_string(area));
  }
}

void check_areas(const Scenario& scenario, std::span<const double> areas) {
  if (areas.size() != scenario.units.size()) {
    throw InvalidArgument("allocation has " + std::to_string(areas.size()) +
                          " entries but scenario has " +
                          std::to_string(scenario.units.size()) + " units");
  }
  if (scenario.workload.times.size() != scenario.units.size()) {
    throw InvalidArgument("workload length does not match unit count");
  }
  const double floor = area_floor(scenario);
  for (double a : areas) {
    check_positive_area(a);
    if (a < floor) {
      throw InvalidArgument("area " + std::to_string(a) + " is below the domain floor " +
                            std::to_string(floor));
    }
  }
}

double weighted_sum(const Scenario& scenario, std::span<const double> areas,
                    const CostWeights& w) {
  double total = 0.0;
  for (std::size_t i = 0; i < areas.size(); ++i) {
    total += detail::unit_cost(scenario.units[i], scenario.workload.times[i], areas[i], w);
  }
  return total;
}

}  // namespace

ObjectiveSpec ObjectiveSpec::from(const Scenario& scenario) {
  return {scenario.objective_kind, scenario.system_power_absolute()};
}

CostWeights cost_weights(const Scenario& scenario, const ObjectiveSpec& spec) {
  switch (spec.kind) {
    case ObjectiveKind::kDelay:
      return {0.0, 1.0};
    case ObjectiveKind::kEnergy:
      if (!(spec.power >= 0.0)) throw InvalidArgument("P_sys must be >= 0");
      return {1.0, spec.power};
    case ObjectiveKind::kDatacenter:
      if (!(spec.power >= 0.0)) throw InvalidArgument("P_const must be >= 0");
      if (!(scenario.dynamic_weight >= 1.0)) {
        throw InvalidArgument("data-center weight w must be >= 1");
      }
      return {scenario.dynamic_weight, spec.power};
  }
  throw InvalidArgument("unknown objective kind");
}

double accel_fn(const UnitModel& unit, double area) {
  check_positive_area(area);
  return std::pow(area, unit.alpha) / unit.efficiency;
}

double accel_fn_deriv(const UnitModel& unit, double area) {
  check_positive_area(area);
  return unit.alpha * std::pow(area, unit.alpha - 1.0) / unit.efficiency;
}

double power_fn(const UnitModel& unit, double area) {
  check_positive_area(area);
  return std::pow(area, unit.beta);
}

double delay_objective(const Scenario& scenario, std::span<const double> areas) {
  check_areas(scenario, areas);
  return weighted_sum(scenario, areas, {0.0, 1.0});
}

double energy_objective(const Scenario& scenario, std::span<const double> areas,
                        double p_sys) {
  check_areas(scenario, areas);
  return weighted_sum(scenario, areas, cost_weights(scenario, ObjectiveSpec::energy(p_sys)));
}

double datacenter_objective(const Scenario& scenario, std::span<const double> areas,
                            double p_const) {
  check_areas(scenario, areas);
  return weighted_sum(scenario, areas,
                      cost_weights(scenario, ObjectiveSpec::datacenter(p_const)));
}

double evaluate(const Scenario& scenario, std::span<const double> areas,
                const ObjectiveSpec& spec) {
  check_areas(scenario, areas);
  return weighted_sum(scenario, areas, cost_weights(scenario, spec));
}

MarginalVector marginals(const Scenario& scenario, std::span<const double> areas,
                         const ObjectiveSpec& spec) {
  check_areas(scenario, areas);
  const CostWeights w = cost_weights(scenario, spec);
  MarginalVector out;
  out.values.reserve(areas.size());
  for (std::size_t i = 0; i < areas.size(); ++i) {
    out.values.push_back(
        detail::unit_marginal(scenario.units[i], scenario.workload.times[i], areas[i], w));
  }
  return out;
}

double kkt_residual(const Scenario& scenario, std::span<const double> areas,
                    const ObjectiveSpec& spec) {
  const MarginalVector m = marginals(scenario, areas, spec);
  double lo = INFINITY;
  double hi = -INFINITY;
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    if (scenario.workload.times[i] <= 0.0) continue;
    lo = std::min(lo, m.values[i]);
    hi = std::max(hi, m.values[i]);
  }
  return hi >= lo ? hi - lo : 0.0;
}

double mean_abs_marginal(const Scenario& scenario, std::span<const double> areas,
                         const ObjectiveSpec& spec) {
  const MarginalVector m = marginals(scenario, areas, spec);
  double sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    if (scenario.workload.times[i] <= 0.0) continue;
    sum += std::abs(m.values[i]);
    ++count;
  }
  return count ? sum / count : 0.0;
}

namespace detail {

double unit_cost(const UnitModel& unit, double time, double area, const CostWeights& w) {
  const double f = std::pow(area, unit.alpha) / unit.efficiency;
  return (w.dynamic * std::pow(area, unit.beta) + w.constant) * f * time;
}

// d/da [t/e (d a^gamma + c a^alpha)]
double unit_marginal(const UnitModel& unit, double time, double area, const CostWeights& w) {
  if (time == 0.0) return 0.0;
  const double g = unit.gamma();
  double m = w.constant * unit.alpha * std::pow(area, unit.alpha - 1.0);
  if (w.dynamic != 0.0 && g != 0.0) m += w.dynamic * g * std::pow(area, g - 1.0);
  return time * m / unit.efficiency;
}

double unit_curvature(const UnitModel& unit, double time, double area,
                      const CostWeights& w) {
  if (time == 0.0) return 0.0;
  const double g = unit.gamma();
  const double a = unit.alpha;
  double c = w.constant * a * (a - 1.0) * std::pow(area, a - 2.0);
  if (w.dynamic != 0.0 && g != 0.0 && g != 1.0) {
    c += w.dynamic * g * (g - 1.0) * std::pow(area, g - 2.0);
  }
  return time * c / unit.efficiency;
}

bool unit_cost_convex(const UnitModel& unit, const CostWeights& w) {
  const double g = unit.gamma();
  return w.dynamic == 0.0 || g <= 0.0 || g >= 1.0;
}

}  // namespace detail

}  // namespace multiamdahl
