#pragma once

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "eliashberg/config.hpp"
#include "eliashberg/errors.hpp"

namespace eliashberg {

/// Adaptive 15-point Gauss-Kronrod integral of g over [a, b] to relative
/// tolerance `tol`. A non-finite integrand value raises QuadratureError
/// carrying the abscissa.
template <class F>
double integrate_adaptive(F&& g, double a, double b, double tol = default_tolerances().quadrature_tol,
                          int max_depth = default_tolerances().quadrature_max_depth) {
  if (a == b) return 0.0;
  auto checked = [&g](double x) {
    const double v = g(x);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "integrate_adaptive: integrand is not finite at x = " << x;
      throw QuadratureError(msg.str(), x);
    }
    return v;
  };
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(checked, a, b,
                                                                        static_cast<unsigned>(max_depth), tol,
                                                                        &error);
}

}  // namespace eliashberg
