#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "eliashberg/config.hpp"
#include "eliashberg/errors.hpp"
#include "eliashberg/numerics/sym_matrix.hpp"

namespace eliashberg {

/// Top eigenvalue of a symmetric matrix with a unit eigenvector whose first
/// nonzero component is positive.
struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;
};

namespace detail {

inline void require_finite(const SymMatrix& m) {
  if (m.order() == 0) throw InputError("sym_eig_top: empty matrix");
  if (!m.all_finite()) throw InputError("sym_eig_top: matrix has non-finite entries");
}

inline void sign_normalize(std::vector<double>& v) {
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  const double zero = scale * 64.0 * std::numeric_limits<double>::epsilon();
  for (double x : v) {
    if (std::abs(x) > zero) {
      if (x < 0.0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

inline void normalize(std::vector<double>& v) {
  double n2 = 0.0;
  for (double x : v) n2 += x * x;
  const double inv = 1.0 / std::sqrt(n2);
  for (double& x : v) x *= inv;
}

inline double residual_norm(const SymMatrix& m, const EigenPair& p) {
  std::vector<double> mv = m * std::span<const double>(p.vector);
  double r2 = 0.0;
  for (std::size_t i = 0; i < mv.size(); ++i) {
    const double d = mv[i] - p.value * p.vector[i];
    r2 += d * d;
  }
  return std::sqrt(r2);
}

/// Cyclic Jacobi rotations; returns all eigenvalues (diagonal of the rotated
/// matrix) and, when requested, the accumulated rotation matrix (row-major,
/// eigenvectors in columns).
inline std::vector<double> jacobi_eigen(const SymMatrix& m, int max_sweeps, std::vector<double>* vectors) {
  const std::size_t n = m.order();
  std::vector<double> a(m.data().begin(), m.data().end());
  auto at = [&a, n](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  if (vectors) {
    vectors->assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) (*vectors)[i * n + i] = 1.0;
  }
  double total = 0.0;
  for (double x : a) total += x * x;
  const double eps = std::numeric_limits<double>::epsilon();

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
    if (off <= eps * eps * total || off == 0.0) {
      std::vector<double> diag(n);
      for (std::size_t i = 0; i < n; ++i) diag[i] = at(i, i);
      return diag;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double app = at(p, p);
        const double aqq = at(q, q);
        // Off-diagonal entries below the diagonal's resolution are dropped.
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) {
          at(p, q) = at(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::abs(theta) > 1e150
                             ? 0.5 / theta
                             : (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = at(q, p) = 0.0;
        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;
        if (vectors) {
          auto& v = *vectors;
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v[k * n + p];
            const double vkq = v[k * n + q];
            v[k * n + p] = c * vkp - s * vkq;
            v[k * n + q] = s * vkp + c * vkq;
          }
        }
      }
    }
  }
  throw NumericalError("sym_eig_top: Jacobi rotations did not converge in " + std::to_string(max_sweeps) +
                       " sweeps");
}

inline Eigen::MatrixXd to_eigen(const SymMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.order());
  return Eigen::Map<const Eigen::MatrixXd>(m.data().data(), n, n);
}

}  // namespace detail

/// Algebraically largest eigenvalue and its unit eigenvector.
///
/// Deterministic for a fixed input. The returned pair satisfies
/// |M v - value v| <= tol.eig_residual * (1 + |value|); a violation raises
/// NumericalError rather than returning an inaccurate pair.
inline EigenPair sym_eig_top(const SymMatrix& m, const Tolerances& tol = default_tolerances()) {
  detail::require_finite(m);
  const std::size_t n = m.order();
  EigenPair out;
  if (n <= tol.jacobi_max_order) {
    std::vector<double> vectors;
    const std::vector<double> diag = detail::jacobi_eigen(m, tol.jacobi_max_sweeps, &vectors);
    const auto top = static_cast<std::size_t>(std::max_element(diag.begin(), diag.end()) - diag.begin());
    out.value = diag[top];
    out.vector.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.vector[k] = vectors[k * n + top];
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(detail::to_eigen(m), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw NumericalError("sym_eig_top: tridiagonal QL failed");
    const auto last = static_cast<Eigen::Index>(n) - 1;
    out.value = solver.eigenvalues()(last);
    out.vector.assign(solver.eigenvectors().col(last).data(), solver.eigenvectors().col(last).data() + n);
  }
  detail::normalize(out.vector);
  detail::sign_normalize(out.vector);
  const double residual = detail::residual_norm(m, out);
  if (!(residual <= tol.eig_residual * (1.0 + std::abs(out.value))))
    throw NumericalError("sym_eig_top: residual " + std::to_string(residual) + " exceeds contract");
  return out;
}

/// Largest eigenvalue only; skips eigenvector accumulation.
inline double sym_eig_top_value(const SymMatrix& m, const Tolerances& tol = default_tolerances()) {
  detail::require_finite(m);
  if (m.order() <= tol.jacobi_max_order) {
    const std::vector<double> diag = detail::jacobi_eigen(m, tol.jacobi_max_sweeps, nullptr);
    return *std::max_element(diag.begin(), diag.end());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(detail::to_eigen(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("sym_eig_top: tridiagonal QL failed");
  return solver.eigenvalues()(static_cast<Eigen::Index>(m.order()) - 1);
}

}  // namespace eliashberg
