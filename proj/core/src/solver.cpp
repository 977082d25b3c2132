#include "multiamdahl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "line_search.hpp"
#include "solver_internal.hpp"

namespace multiamdahl {

void SolverSettings::check() const {
  if (!(feasibility_tol > 0.0)) throw InvalidArgument("feasibility_tol must be > 0");
  if (!(marginal_tol > 0.0)) throw InvalidArgument("marginal_tol must be > 0");
  if (max_iterations <= 0) throw InvalidArgument("max_iterations must be > 0");
  if (!(oracle_grid_step > 0.0 && oracle_grid_step < 1.0)) {
    throw InvalidArgument("oracle_grid_step must lie in (0, 1) as a fraction of A");
  }
  if (!(area_floor > 0.0 && area_floor < 1.0)) {
    throw InvalidArgument("area_floor must lie in (0, 1) as a fraction of A");
  }
  if (oracle_max_points == 0) throw InvalidArgument("oracle_max_points must be > 0");
}

namespace detail {

namespace {

struct Layout {
  double budget = 0.0;
  double floor = 0.0;
  double remaining = 0.0;  // area left for units with nonzero workload
  std::vector<std::size_t> active;
};

Layout make_layout(const Scenario& scenario, const SolverSettings& settings) {
  require_valid(scenario);
  settings.check();
  Layout out;
  out.budget = scenario.area_budget;
  out.floor = settings.area_floor * scenario.area_budget;
  const std::size_t n = scenario.size();
  if (static_cast<double>(n) * out.floor > out.budget) {
    throw InvalidArgument("infeasible floor configuration: n * floor exceeds A");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (scenario.workload.times[i] > 0.0) out.active.push_back(i);
  }
  if (out.active.empty()) throw InvalidArgument("all-zero workload");
  out.remaining =
      out.budget - static_cast<double>(n - out.active.size()) * out.floor;
  return out;
}

// Puts the rounding residue of sum(a) - target on the largest active unit.
void close_budget(std::vector<double>& areas, const Layout& layout) {
  double sum = 0.0;
  for (double a : areas) sum += a;
  std::size_t largest = layout.active.front();
  for (std::size_t i : layout.active) {
    if (areas[i] > areas[largest]) largest = i;
  }
  areas[largest] += layout.budget - sum;
}

std::vector<double> pinned_start(const Scenario& scenario, const Layout& layout) {
  return std::vector<double>(scenario.size(), layout.floor);
}

AllocationResult single_active(const Scenario& scenario, const CostWeights& w,
                               const Layout& layout) {
  std::vector<double> areas = pinned_start(scenario, layout);
  areas[layout.active.front()] = layout.remaining;
  close_budget(areas, layout);
  return finalize(scenario, std::move(areas), w, layout.floor, "single-unit", 0);
}

// Log-space bisection on x = log(-lambda). `total(x)` must be nonincreasing
// in x. Returns x with total(x) == target, or nullopt if even lambda -> 0-
// cannot reach the target.
template <typename Total>
std::optional<double> bisect_multiplier(Total&& total, double target, int max_iterations,
                                        int& iterations) {
  const double step = std::log(1e3);
  double x_hi_total = std::log(1e-12);  // lambda close to 0: large areas
  while (total(x_hi_total) < target) {
    x_hi_total -= step;
    if (x_hi_total < std::log(1e-300)) return std::nullopt;
  }
  double x_lo_total = std::log(1e9);  // lambda very negative: small areas
  while (total(x_lo_total) > target) {
    x_lo_total += step;
    if (x_lo_total > std::log(1e300)) {
      throw ConvergenceError("could not bracket the Lagrange multiplier");
    }
  }
  // total(lo) >= target >= total(hi) with lo < hi in x.
  double lo = x_hi_total;
  double hi = x_lo_total;
  iterations = 0;
  for (; iterations < max_iterations; ++iterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (total(mid) >= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Area at which unit i's marginal equals lambda on its increasing branch,
// clamped to [floor, cap].
double invert_marginal(const UnitModel& unit, double time, const CostWeights& w,
                       double lambda, double floor, double cap, int max_steps) {
  double top = cap;
  if (!unit_cost_convex(unit, w)) {
    const double g = unit.gamma();
    const double a = unit.alpha;
    const double ratio = w.constant * a * (a - 1.0) / (w.dynamic * g * (1.0 - g));
    top = std::min(cap, std::pow(ratio, 1.0 / unit.beta));
  }
  if (top <= floor) return floor;
  if (unit_marginal(unit, time, floor, w) >= lambda) return floor;
  if (unit_marginal(unit, time, top, w) <= lambda) return top;
  const double log_a = bisect_root(
      [&](double x) { return unit_marginal(unit, time, std::exp(x), w) - lambda; },
      std::log(floor), std::log(top), max_steps);
  return std::exp(log_a);
}

std::optional<AllocationResult> dual_bisection(const Scenario& scenario, const CostWeights& w,
                                               const Layout& layout,
                                               const SolverSettings& settings) {
  const double cap = 2.0 * layout.budget;
  std::vector<double> areas = pinned_start(scenario, layout);
  auto fill = [&](double x) {
    const double lambda = -std::exp(x);
    double sum = 0.0;
    for (std::size_t i : layout.active) {
      areas[i] = invert_marginal(scenario.units[i], scenario.workload.times[i], w, lambda,
                                 layout.floor, cap, settings.max_iterations);
      sum += areas[i];
    }
    return sum;
  };
  int iterations = 0;
  const auto x = bisect_multiplier(fill, layout.remaining, settings.max_iterations, iterations);
  if (!x) return std::nullopt;
  const double filled = fill(*x);
  if (std::abs(filled - layout.remaining) > settings.feasibility_tol * layout.budget) {
    throw ConvergenceError("dual bisection did not meet the area budget after " +
                           std::to_string(iterations) + " iterations");
  }
  close_budget(areas, layout);
  return finalize(scenario, std::move(areas), w, layout.floor, "dual-bisection", iterations);
}

struct PairOptimum {
  double first = 0.0;
  double value = 0.0;
};

// Minimizes cost_i(x) + cost_j(total - x) over x in [floor, total - floor]:
// uniform scan, golden-section around every local minimum of the scan,
// then a root polish on the marginal difference.
PairOptimum minimize_pair(const Scenario& scenario, const CostWeights& w, std::size_t i,
                          std::size_t j, double total, double floor, double width) {
  const UnitModel& ui = scenario.units[i];
  const UnitModel& uj = scenario.units[j];
  const double ti = scenario.workload.times[i];
  const double tj = scenario.workload.times[j];
  const double lo = floor;
  const double hi = total - floor;
  auto phi = [&](double x) {
    x = std::clamp(x, lo, hi);
    return unit_cost(ui, ti, x, w) + unit_cost(uj, tj, total - x, w);
  };
  auto dphi = [&](double x) {
    return unit_marginal(ui, ti, x, w) - unit_marginal(uj, tj, total - x, w);
  };
  if (!(hi > lo)) return {lo, phi(lo)};

  constexpr int kIntervals = 64;
  double xs[kIntervals + 1];
  double fs[kIntervals + 1];
  for (int k = 0; k <= kIntervals; ++k) {
    xs[k] = k == kIntervals ? hi : lo + (hi - lo) * k / kIntervals;
    fs[k] = phi(xs[k]);
  }
  PairOptimum best{xs[0], fs[0]};
  for (int k = 1; k <= kIntervals; ++k) {
    if (fs[k] < best.value) best = {xs[k], fs[k]};
  }
  for (int k = 0; k <= kIntervals; ++k) {
    const bool left_ok = k == 0 || fs[k] <= fs[k - 1];
    const bool right_ok = k == kIntervals || fs[k] <= fs[k + 1];
    if (!left_ok || !right_ok) continue;
    const double a = xs[std::max(k - 1, 0)];
    const double b = xs[std::min(k + 1, kIntervals)];
    auto [x, fx] = golden_section(phi, a, b, width);
    // Root polish: phi' changes sign from - to + around an interior minimum.
    if (dphi(a) < 0.0 && dphi(b) > 0.0) {
      const double root = bisect_root(dphi, a, b);
      const double froot = phi(root);
      // Near the optimum phi is flat to rounding; prefer the exact stationary point.
      if (froot <= fx + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(fx)) {
        x = root;
        fx = froot;
      }
    }
    if (fx < best.value) best = {x, fx};
  }
  return best;
}

// Gauss-Southwell pairwise descent: move area from the unit with the
// largest marginal to the one with the smallest, exact line search on the
// pair. Keeps sum(a) fixed.
int pairwise_descent(const Scenario& scenario, const CostWeights& w, const Layout& layout,
                     std::vector<double>& areas, const SolverSettings& settings) {
  constexpr int kMaxSweeps = 20000;
  const double width = settings.feasibility_tol * layout.budget;
  double current = weighted_objective(scenario, areas, w);
  int steps = 0;
  for (; steps < kMaxSweeps; ++steps) {
    std::size_t giver = layout.active.front();
    std::size_t taker = layout.active.front();
    double m_give = -INFINITY;
    double m_take = INFINITY;
    double scale = 0.0;
    for (std::size_t i : layout.active) {
      const double m = unit_marginal(scenario.units[i], scenario.workload.times[i], areas[i], w);
      scale += std::abs(m);
      if (!is_pinned(areas[i], layout.floor) && m > m_give) {
        m_give = m;
        giver = i;
      }
      if (m < m_take) {
        m_take = m;
        taker = i;
      }
    }
    scale /= static_cast<double>(layout.active.size());
    if (giver == taker || m_give - m_take <= 1e-3 * settings.marginal_tol * scale) break;
    const double total = areas[giver] + areas[taker];
    const PairOptimum opt =
        minimize_pair(scenario, w, giver, taker, total, layout.floor, width);
    std::vector<double> trial = areas;
    trial[giver] = opt.first;
    trial[taker] = total - opt.first;
    const double value = weighted_objective(scenario, trial, w);
    if (!(value < current)) break;
    areas = std::move(trial);
    current = value;
  }
  return steps;
}

// Newton iterations on m_i(a_i) = lambda, sum a_i = const over interior
// units. Steps are accepted only if they shrink the marginal spread without
// raising the objective.
void newton_polish(const Scenario& scenario, const CostWeights& w, const Layout& layout,
                   std::vector<double>& areas) {
  auto spread = [&](const std::vector<double>& a) {
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t i : layout.active) {
      if (is_pinned(a[i], layout.floor)) continue;
      const double m = unit_marginal(scenario.units[i], scenario.workload.times[i], a[i], w);
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
    return hi >= lo ? hi - lo : 0.0;
  };
  double current_spread = spread(areas);
  double current_value = weighted_objective(scenario, areas, w);
  for (int iter = 0; iter < 60 && current_spread > 0.0; ++iter) {
    std::vector<std::size_t> interior;
    for (std::size_t i : layout.active) {
      if (!is_pinned(areas[i], layout.floor)) interior.push_back(i);
    }
    if (interior.size() < 2) return;
    double sum_inv = 0.0;
    double sum_ratio = 0.0;
    std::vector<double> m(areas.size()), c(areas.size());
    for (std::size_t i : interior) {
      m[i] = unit_marginal(scenario.units[i], scenario.workload.times[i], areas[i], w);
      c[i] = unit_curvature(scenario.units[i], scenario.workload.times[i], areas[i], w);
      if (c[i] == 0.0 || !std::isfinite(c[i])) return;
      sum_inv += 1.0 / c[i];
      sum_ratio += m[i] / c[i];
    }
    if (sum_inv == 0.0 || !std::isfinite(sum_inv)) return;
    const double lambda = sum_ratio / sum_inv;
    bool accepted = false;
    for (double t = 1.0; t > 1e-6; t *= 0.5) {
      std::vector<double> trial = areas;
      bool ok = true;
      for (std::size_t i : interior) {
        trial[i] = areas[i] + t * (lambda - m[i]) / c[i];
        if (!(trial[i] > layout.floor)) ok = false;
      }
      if (!ok) continue;
      close_budget(trial, layout);
      const double s = spread(trial);
      const double v = weighted_objective(scenario, trial, w);
      if (s < current_spread && v <= current_value + 1e-14 * std::abs(current_value)) {
        areas = std::move(trial);
        current_spread = s;
        current_value = v;
        accepted = true;
        break;
      }
    }
    if (!accepted) return;
  }
}

// Largest grid that stays cheap enough to seed the descent.
std::size_t seed_divisions(std::size_t units) {
  constexpr std::size_t kSeedBudget = 200'000;
  std::size_t k = 1;
  while (k < 400 && simplex_grid_size(units, k + 1) <= kSeedBudget) ++k;
  return k;
}

AllocationResult direct_minimize(const Scenario& scenario, const CostWeights& w,
                                 const Layout& layout, const SolverSettings& settings,
                                 const std::optional<AllocationResult>& warm) {
  const double width = settings.feasibility_tol * layout.budget;
  if (layout.active.size() == 2) {
    const std::size_t i = layout.active[0];
    const std::size_t j = layout.active[1];
    const PairOptimum opt =
        minimize_pair(scenario, w, i, j, layout.remaining, layout.floor, width);
    std::vector<double> areas = pinned_start(scenario, layout);
    areas[i] = opt.first;
    areas[j] = layout.remaining - opt.first;
    close_budget(areas, layout);
    return finalize(scenario, std::move(areas), w, layout.floor, "golden-section", 0);
  }

  std::vector<std::vector<double>> seeds;
  seeds.push_back(
      grid_search(scenario, w, layout.floor, seed_divisions(scenario.size())).areas);
  if (warm) seeds.push_back(warm->areas);

  std::optional<AllocationResult> best;
  for (auto& seed : seeds) {
    for (std::size_t i = 0; i < seed.size(); ++i) {
      if (scenario.workload.times[i] <= 0.0) seed[i] = layout.floor;
    }
    close_budget(seed, layout);
    const int steps = pairwise_descent(scenario, w, layout, seed, settings);
    newton_polish(scenario, w, layout, seed);
    AllocationResult r =
        finalize(scenario, std::move(seed), w, layout.floor, "coordinate-descent", steps);
    if (!best || r.objective_value < best->objective_value) best = std::move(r);
  }
  return *best;
}

}  // namespace

double weighted_objective(const Scenario& scenario, std::span<const double> areas,
                          const CostWeights& w) {
  double total = 0.0;
  for (std::size_t i = 0; i < areas.size(); ++i) {
    total += unit_cost(scenario.units[i], scenario.workload.times[i], areas[i], w);
  }
  return total;
}

AllocationResult finalize(const Scenario& scenario, std::vector<double> areas,
                          const CostWeights& w, double floor, std::string method,
                          int iterations) {
  AllocationResult r;
  r.objective_value = weighted_objective(scenario, areas, w);
  double lo = INFINITY, hi = -INFINITY, sum_m = 0.0, sum_a = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < areas.size(); ++i) {
    sum_a += areas[i];
    if (scenario.workload.times[i] <= 0.0 || is_pinned(areas[i], floor)) continue;
    const double m = unit_marginal(scenario.units[i], scenario.workload.times[i], areas[i], w);
    lo = std::min(lo, m);
    hi = std::max(hi, m);
    sum_m += m;
    ++count;
  }
  r.lambda = count ? sum_m / count : 0.0;
  r.max_marginal_residual = count ? hi - lo : 0.0;
  r.feasibility_gap = std::abs(sum_a - scenario.area_budget);
  r.areas = std::move(areas);
  r.method = std::move(method);
  r.iterations = iterations;
  return r;
}

AllocationResult solve_two_unit_weighted(const Scenario& scenario, const CostWeights& w,
                                         const SolverSettings& settings) {
  if (scenario.size() != 2) {
    throw InvalidArgument("two-unit solver needs exactly 2 units, got " +
                          std::to_string(scenario.size()));
  }
  const Layout layout = make_layout(scenario, settings);
  if (layout.active.size() == 1) return single_active(scenario, w, layout);
  return direct_minimize(scenario, w, layout, settings, std::nullopt);
}

AllocationResult solve_weighted(const Scenario& scenario, const CostWeights& w,
                                const SolverSettings& settings) {
  const Layout layout = make_layout(scenario, settings);
  if (layout.active.size() == 1) return single_active(scenario, w, layout);

  std::optional<AllocationResult> dual = dual_bisection(scenario, w, layout, settings);
  bool convex = true;
  for (std::size_t i : layout.active) convex = convex && unit_cost_convex(scenario.units[i], w);
  if (dual && convex) return *dual;

  AllocationResult direct = direct_minimize(scenario, w, layout, settings, dual);
  if (dual && dual->objective_value <= direct.objective_value) return *dual;
  return direct;
}

}  // namespace detail

AllocationResult solve_delay(const Scenario& scenario, const SolverSettings& settings) {
  const detail::Layout layout = detail::make_layout(scenario, settings);
  const CostWeights w{0.0, 1.0};
  if (layout.active.size() == 1) return detail::single_active(scenario, w, layout);

  const auto& units = scenario.units;
  const auto& times = scenario.workload.times;
  const double alpha = units[layout.active.front()].alpha;
  const bool shared_alpha = std::all_of(layout.active.begin(), layout.active.end(),
                                        [&](std::size_t i) { return units[i].alpha == alpha; });

  std::vector<double> areas = detail::pinned_start(scenario, layout);
  if (shared_alpha) {
    // alpha a^(alpha-1) t / e = lambda  =>  a proportional to (t/e)^(1/(1-alpha))
    double total_weight = 0.0;
    for (std::size_t i : layout.active) {
      areas[i] = std::pow(times[i] / units[i].efficiency, 1.0 / (1.0 - alpha));
      total_weight += areas[i];
    }
    bool above_floor = true;
    for (std::size_t i : layout.active) {
      areas[i] = layout.remaining * areas[i] / total_weight;
      above_floor = above_floor && areas[i] >= layout.floor;
    }
    if (above_floor) {
      detail::close_budget(areas, layout);
      return detail::finalize(scenario, std::move(areas), w, layout.floor, "closed-form", 0);
    }
  }

  // a_i(lambda) = (lambda e_i / (alpha_i t_i))^(1/(alpha_i - 1)), in x = log(-lambda).
  auto fill = [&](double x) {
    double sum = 0.0;
    for (std::size_t i : layout.active) {
      const double scale = std::log(units[i].efficiency / (-units[i].alpha * times[i]));
      areas[i] = std::max(layout.floor, std::exp((x + scale) / (units[i].alpha - 1.0)));
      sum += areas[i];
    }
    return sum;
  };
  int iterations = 0;
  const auto x =
      detail::bisect_multiplier(fill, layout.remaining, settings.max_iterations, iterations);
  if (!x) throw ConvergenceError("delay multiplier bracket failed");
  const double filled = fill(*x);
  if (std::abs(filled - layout.remaining) > settings.feasibility_tol * layout.budget) {
    throw ConvergenceError("delay bisection did not converge within " +
                           std::to_string(settings.max_iterations) + " iterations");
  }
  detail::close_budget(areas, layout);
  return detail::finalize(scenario, std::move(areas), w, layout.floor, "dual-bisection",
                          iterations);
}

AllocationResult solve_energy(const Scenario& scenario, double p_sys,
                              const SolverSettings& settings) {
  return detail::solve_weighted(scenario,
                                cost_weights(scenario, ObjectiveSpec::energy(p_sys)), settings);
}

AllocationResult solve_datacenter(const Scenario& scenario, double p_const,
                                  const SolverSettings& settings) {
  return detail::solve_weighted(
      scenario, cost_weights(scenario, ObjectiveSpec::datacenter(p_const)), settings);
}

AllocationResult solve_two_unit(const Scenario& scenario, double p_sys,
                                const SolverSettings& settings) {
  return detail::solve_two_unit_weighted(
      scenario, cost_weights(scenario, ObjectiveSpec::energy(p_sys)), settings);
}

AllocationResult solve(const Scenario& scenario, const ObjectiveSpec& spec,
                       const SolverSettings& settings) {
  if (spec.kind == ObjectiveKind::kDelay) return solve_delay(scenario, settings);
  const CostWeights w = cost_weights(scenario, spec);
  if (scenario.size() == 2) return detail::solve_two_unit_weighted(scenario, w, settings);
  return detail::solve_weighted(scenario, w, settings);
}

}  // namespace multiamdahl
