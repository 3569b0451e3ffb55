#pragma once

#include <cstddef>

namespace eliashberg {

/// Numerical tolerances shared by all modules. The defaults are the values
/// every documented accuracy claim in this library is measured against.
struct Tolerances {
  /// Eigenpair residual bound: |M v - value v| <= eig_residual * (1 + |value|).
  double eig_residual = 1e-10;
  /// Matrices up to this order use cyclic Jacobi; larger ones use Householder
  /// tridiagonalization + implicit QL (Eigen).
  std::size_t jacobi_max_order = 32;
  int jacobi_max_sweeps = 100;

  double power_tol = 1e-12;
  long power_max_iterations = 100000;

  double quadrature_tol = 1e-10;
  int quadrature_max_depth = 15;

  /// Relative tolerance of monotone bisection (on T^2 in the T_c solver).
  double bisection_tol = 1e-12;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tolerances{};
  return tolerances;
}

}  // namespace eliashberg
