#pragma once

#include <string>

#include <boost/math/special_functions/zeta.hpp>

#include "eliashberg/errors.hpp"

namespace eliashberg {

/// Riemann zeta on the real axis s > 1.
inline double riemann_zeta(double s) {
  if (!(s > 1.0)) throw DomainError("riemann_zeta: requires s > 1, got " + std::to_string(s));
  return boost::math::zeta(s);
}

}  // namespace eliashberg
