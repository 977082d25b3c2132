#include "multiamdahl/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "multiamdahl/objectives.hpp"

namespace multiamdahl {

namespace {

void require_fractions(const std::vector<double>& s_values) {
  if (s_values.empty()) throw InvalidArgument("s list is empty");
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    if (!(s_values[i] >= 0.0 && s_values[i] < 1.0)) {
      throw InvalidArgument("s values must lie in [0, 1)");
    }
    if (i > 0 && !(s_values[i] > s_values[i - 1])) {
      throw InvalidArgument("s values must be sorted ascending without repeats");
    }
  }
}

SweepTable table_header(const Scenario& scenario, ObjectiveKind kind) {
  SweepTable t;
  t.scenario_name = scenario.name;
  t.objective = kind;
  t.area_budget = scenario.area_budget;
  for (const auto& u : scenario.units) t.unit_names.push_back(u.name);
  return t;
}

SweepRow solve_row(const Scenario& scenario, const ObjectiveSpec& spec, double s,
                   const SolverSettings& settings) {
  SweepRow row;
  row.s = s;
  row.p_sys = spec.power;
  try {
    const AllocationResult r = solve(scenario, spec, settings);
    row.areas = r.areas;
    row.objective = r.objective_value;
    row.kkt_residual = r.max_marginal_residual;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

// Rows are independent; gather them in input order.
std::vector<SweepRow> solve_rows(const Scenario& scenario,
                                 const std::vector<ObjectiveSpec>& specs,
                                 const std::vector<double>& s_values,
                                 const SolverSettings& settings) {
  std::vector<std::future<SweepRow>> pending;
  pending.reserve(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    pending.push_back(std::async(std::launch::async, solve_row, std::cref(scenario), specs[i],
                                 s_values[i], std::cref(settings)));
  }
  std::vector<SweepRow> rows;
  rows.reserve(pending.size());
  for (auto& f : pending) rows.push_back(f.get());
  return rows;
}

}  // namespace

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi > lo) || count < 2) {
    throw InvalidArgument("log_spaced needs 0 < lo < hi and count >= 2");
  }
  std::vector<double> out(count);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> default_s_grid() {
  std::vector<double> s = log_spaced(0.005, 0.99, 33);
  for (double named : {0.02, 0.1, 0.4, 0.95}) s.push_back(named);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

SweepTable sweep_psys(const Scenario& scenario, const std::vector<double>& s_values,
                      const SolverSettings& settings, bool include_delay_row) {
  require_valid(scenario);
  require_fractions(s_values);
  SweepTable table = table_header(scenario, ObjectiveKind::kEnergy);
  std::vector<ObjectiveSpec> specs;
  for (double s : s_values) {
    specs.push_back(ObjectiveSpec::energy(SystemPowerSpec::fraction(s).resolve(
        scenario.reference_power())));
  }
  table.rows = solve_rows(scenario, specs, s_values, settings);
  if (include_delay_row) {
    SweepRow row = solve_row(scenario, ObjectiveSpec::delay(), 1.0, settings);
    row.p_sys = std::numeric_limits<double>::infinity();
    row.delay_limit = true;
    table.rows.push_back(std::move(row));
  }
  return table;
}

CurveTable curve_energy_vs_allocation(const Scenario& scenario,
                                      const std::vector<double>& s_values,
                                      std::size_t n_points, const SolverSettings& settings) {
  require_valid(scenario);
  if (scenario.size() != 2) {
    throw InvalidArgument("energy-vs-allocation curves need a two-unit scenario");
  }
  if (n_points < 16) throw InvalidArgument("n_points must be >= 16");
  require_fractions(s_values);

  const double A = scenario.area_budget;
  const double floor = settings.area_floor * A;
  CurveTable table;
  table.scenario_name = scenario.name;
  for (double s : s_values) {
    Curve c;
    c.s = s;
    c.p_sys = SystemPowerSpec::fraction(s).resolve(scenario.reference_power());
    std::vector<double> energy(n_points);
    c.cpu_share.resize(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
      const double span = (A - 2.0 * floor) / static_cast<double>(n_points - 1);
      const double a_cpu = floor + span * static_cast<double>(k);
      // mirrored so neither end rounds below the floor
      const double areas[2] = {a_cpu, floor + span * static_cast<double>(n_points - 1 - k)};
      energy[k] = energy_objective(scenario, areas, c.p_sys);
      c.cpu_share[k] = a_cpu / A;
    }
    c.argmin = static_cast<std::size_t>(
        std::min_element(energy.begin(), energy.end()) - energy.begin());
    const double lowest = energy[c.argmin];
    c.normalized.resize(n_points);
    for (std::size_t k = 0; k < n_points; ++k) c.normalized[k] = energy[k] / lowest;
    table.curves.push_back(std::move(c));
  }
  return table;
}

LimitReport limit_check(const Scenario& scenario, const std::vector<double>& p_sys_ladder,
                        const SolverSettings& settings) {
  require_valid(scenario);
  if (p_sys_ladder.size() < 3) throw InvalidArgument("ladder needs at least 3 rungs");
  for (std::size_t i = 1; i < p_sys_ladder.size(); ++i) {
    if (!(p_sys_ladder[i] > p_sys_ladder[i - 1])) {
      throw InvalidArgument("ladder must be strictly increasing");
    }
  }
  LimitReport report;
  report.delay_areas = solve_delay(scenario, settings).areas;
  const double A = scenario.area_budget;
  for (double p : p_sys_ladder) {
    const AllocationResult r = solve(scenario, ObjectiveSpec::energy(p), settings);
    double gap = 0.0;
    for (std::size_t i = 0; i < r.areas.size(); ++i) {
      gap = std::max(gap, std::abs(r.areas[i] - report.delay_areas[i]));
    }
    report.p_sys.push_back(p);
    report.gaps.push_back(gap);
  }
  // Differences below the feasibility resolution count as ties.
  const double noise = settings.feasibility_tol * A;
  report.nonincreasing = true;
  for (std::size_t i = 1; i < report.gaps.size(); ++i) {
    if (report.gaps[i] > report.gaps[i - 1] + noise) report.nonincreasing = false;
  }
  report.final_gap = report.gaps.back();
  report.passed = report.nonincreasing && report.final_gap < 0.01 * A;
  return report;
}

SweepTable datacenter_sweep(const Scenario& scenario, double w,
                            const std::vector<double>& p_const_values,
                            const SolverSettings& settings) {
  if (!(w >= 1.0)) throw InvalidArgument("w must be >= 1");
  Scenario dc = scenario;
  dc.dynamic_weight = w;
  dc.objective_kind = ObjectiveKind::kDatacenter;
  require_valid(dc);
  for (std::size_t i = 0; i < p_const_values.size(); ++i) {
    if (!(p_const_values[i] >= 0.0)) throw InvalidArgument("P_const values must be >= 0");
    if (i > 0 && !(p_const_values[i] > p_const_values[i - 1])) {
      throw InvalidArgument("P_const values must be sorted ascending");
    }
  }
  SweepTable table = table_header(dc, ObjectiveKind::kDatacenter);
  std::vector<ObjectiveSpec> specs;
  std::vector<double> s_column;
  const double ref = dc.reference_power();
  for (double p : p_const_values) {
    specs.push_back(ObjectiveSpec::datacenter(p));
    s_column.push_back(p / (p + ref));
  }
  table.rows = solve_rows(dc, specs, s_column, settings);
  return table;
}

}  // namespace multiamdahl
