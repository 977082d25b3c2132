#pragma once

#include <cmath>
#include <utility>

namespace multiamdahl::detail {

// Golden-section search for a minimum of `f` on [lo, hi]. Stops once the
// bracket is narrower than `width` or stops shrinking. Returns (x, f(x)) of
// the best point seen.
template <typename F>
std::pair<double, double> golden_section(F&& f, double lo, double hi, double width,
                                         int max_steps = 400) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int step = 0; step < max_steps && hi - lo > width; ++step) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      if (!(c > lo && c < d)) break;
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      if (!(d > c && d < hi)) break;
      fd = f(d);
    }
  }
  return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

// Bisection for g(x) == 0 given g(lo) < 0 < g(hi) (or the reverse). Runs
// until the midpoint no longer moves or `max_steps` is exhausted.
template <typename G>
double bisect_root(G&& g, double lo, double hi, int max_steps = 200) {
  double glo = g(lo);
  for (int step = 0; step < max_steps; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace multiamdahl::detail
