#pragma once

#include <cmath>
#include <cstddef>
#include <optional>

namespace pdcent {

// Bisection on a bracket [lo, hi] with a sign change. Stops when the bracket
// is narrower than abs_tol + rel_tol * |mid|. Returns nullopt when the end
// points do not bracket a root. An exact zero at an end point is a root.
template <class Func>
std::optional<double> bisect(const Func& f, double lo, double hi, double abs_tol,
                             double rel_tol = 0.0, std::size_t max_iter = 400) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) return std::nullopt;

  const bool rising = f_lo < 0.0;
  for (std::size_t i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= abs_tol + rel_tol * std::fabs(mid)) return mid;
    if (mid <= lo || mid >= hi) return mid;  // bracket exhausted at double resolution
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == rising)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace pdcent
