#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

#include "eliashberg/config.hpp"
#include "eliashberg/errors.hpp"

namespace eliashberg {

/// Spectral radius of a linear map that preserves the nonnegative cone.
///
/// `apply(x, y)` must write y = A x for x >= 0. Iteration starts from the
/// all-ones vector. Convergence is judged by the Collatz-Wielandt bracket
/// min_i (Ax)_i/x_i <= rho(A) <= max_i (Ax)_i/x_i, which is rigorous for
/// nonnegative A; the midpoint is returned once the bracket is narrower than
/// `tol` relative to its upper end.
template <class Apply>
double power_iteration_positive(Apply&& apply, std::size_t n, double tol = default_tolerances().power_tol,
                                long max_iterations = default_tolerances().power_max_iterations) {
  if (n == 0) throw InputError("power_iteration_positive: empty vector space");
  if (!(tol > 0.0)) throw DomainError("power_iteration_positive: tol must be positive");
  std::vector<double> x(n, 1.0);
  std::vector<double> y(n, 0.0);
  double lo = 0.0;
  double hi = 0.0;
  for (long it = 0; it < max_iterations; ++it) {
    apply(std::span<const double>(x), std::span<double>(y));
    lo = std::numeric_limits<double>::infinity();
    hi = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(y[i] >= 0.0)) throw InputError("power_iteration_positive: map left the nonnegative cone");
      norm = std::max(norm, y[i]);
      if (x[i] > 0.0) {
        const double r = y[i] / x[i];
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
    }
    if (norm == 0.0) return 0.0;
    if (hi - lo <= tol * hi) return 0.5 * (lo + hi);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
  }
  std::ostringstream msg;
  msg << "power_iteration_positive: no convergence after " << max_iterations
      << " iterations; Collatz-Wielandt bracket [" << lo << ", " << hi << "]";
  throw NumericalError(msg.str());
}

}  // namespace eliashberg
