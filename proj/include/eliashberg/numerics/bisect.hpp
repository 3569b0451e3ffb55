#pragma once

#include <cmath>
#include <sstream>

#include "eliashberg/config.hpp"
#include "eliashberg/errors.hpp"

namespace eliashberg {

/// Solves f(x) = target on [lo, hi] for continuous monotone f.
///
/// The direction of monotonicity is read off the endpoint values. Stops when
/// the bracket is narrower than tol * (hi - lo) and returns its midpoint.
template <class F>
double bisect_monotone(F&& f, double lo, double hi, double target, double tol = default_tolerances().bisection_tol) {
  if (!(lo < hi)) throw InputError("bisect_monotone: requires lo < hi");
  if (!(tol > 0.0)) throw DomainError("bisect_monotone: tol must be positive");
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  const double g_lo = f_lo - target;
  const double g_hi = f_hi - target;
  if (!std::isfinite(g_lo) || !std::isfinite(g_hi) || g_lo * g_hi > 0.0) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "bisect_monotone: target " << target << " not bracketed by f(" << lo << ") = " << f_lo << " and f("
        << hi << ") = " << f_hi;
    throw BracketError(msg.str(), f_lo, f_hi);
  }
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  const bool increasing = g_hi > 0.0;
  const double width = tol * (hi - lo);
  double a = lo;
  double b = hi;
  // 2^-1100 is below any representable relative width, so the cap only trips on NaN.
  for (int it = 0; it < 1100 && b - a > width; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double g = f(mid) - target;
    if (g == 0.0) return mid;
    if ((g > 0.0) == increasing)
      b = mid;
    else
      a = mid;
  }
  return 0.5 * (a + b);
}

}  // namespace eliashberg
