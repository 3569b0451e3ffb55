#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "eliashberg/config.hpp"
#include "eliashberg/errors.hpp"
#include "eliashberg/numerics/eigen.hpp"
#include "eliashberg/numerics/sym_matrix.hpp"

namespace eliashberg {

/// N-frequency truncation of the gamma-model interaction -G1 + G2 + G3.
struct GammaOperator {
  double gamma = 0.0;
  SymMatrix matrix;

  std::size_t order() const noexcept { return matrix.order(); }
};

/// theta_n = xi_n / sqrt(2n+1): the angle variables behind an l2 vector xi.
struct ThetaSequence {
  std::vector<double> values;

  static ThetaSequence from_xi(std::span<const double> xi) {
    ThetaSequence t;
    t.values.resize(xi.size());
    for (std::size_t n = 0; n < xi.size(); ++n) t.values[n] = xi[n] / std::sqrt(2.0 * n + 1.0);
    return t;
  }

  std::size_t size() const noexcept { return values.size(); }
};

namespace detail {

inline void check_gamma_args(double gamma, int n) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw DomainError("gamma model: exponent must be positive, got " + std::to_string(gamma));
  if (n < 1) throw DomainError("gamma model: truncation order must be >= 1");
}

}  // namespace detail

inline GammaOperator assemble_gamma(double gamma, int n) {
  detail::check_gamma_args(gamma, n);
  const auto order = static_cast<std::size_t>(n);
  std::vector<double> inv_pow(2 * order + 1, 0.0);  // inv_pow[k] = k^-gamma, k >= 1
  for (std::size_t k = 1; k < inv_pow.size(); ++k) inv_pow[k] = std::pow(static_cast<double>(k), -gamma);
  std::vector<double> inv_sqrt_odd(order);
  for (std::size_t i = 0; i < order; ++i) inv_sqrt_odd[i] = 1.0 / std::sqrt(2.0 * i + 1.0);

  GammaOperator op{gamma, SymMatrix(order)};
  double partial = 0.0;  // sum_{k=1}^{i} 2 / k^gamma
  for (std::size_t i = 0; i < order; ++i) {
    if (i > 0) partial += 2.0 * inv_pow[i];
    for (std::size_t j = i; j < order; ++j) {
      double kernel = inv_pow[i + j + 1];
      if (j != i) kernel += inv_pow[j - i];
      double entry = inv_sqrt_odd[i] * kernel * inv_sqrt_odd[j];
      if (j == i) entry -= partial / (2.0 * i + 1.0);
      op.matrix.set(i, j, entry);
    }
  }
  return op;
}

/// Top eigenpair g^(N)(gamma); the eigenvector is the positive optimizer.
inline EigenPair g_top(double gamma, int n, const Tolerances& tol = default_tolerances()) {
  return sym_eig_top(assemble_gamma(gamma, n).matrix, tol);
}

inline double rayleigh_quotient(const SymMatrix& m, std::span<const double> v) {
  const std::vector<double> mv = m * v;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    num += v[i] * mv[i];
    den += v[i] * v[i];
  }
  return num / den;
}

/// <G^(N)(gamma')>_gamma: expectation of the gamma' operator in the top
/// eigenvector of the gamma operator.
inline double expected_gamma(double gamma_prime, double gamma, int n, const Tolerances& tol = default_tolerances()) {
  detail::check_gamma_args(gamma_prime, n);
  const EigenPair top = g_top(gamma, n, tol);
  return rayleigh_quotient(assemble_gamma(gamma_prime, n).matrix, top.vector);
}

/// Coefficients c_1..c_{2N-1} of the Dirichlet series sum_k c_k / k^gamma
/// that equals <Theta, hat-G(gamma) Theta> for every gamma. Entry k-1 holds c_k.
///
/// c_k = [k <= N-1] sum_{n=k}^{N-1} 2 (theta_{n-k} - theta_n) theta_n
///     + sum_{n < m < N, n + m = k - 1} 2 theta_n theta_m
///     + [k odd] theta_{(k-1)/2}^2
inline std::vector<double> dirichlet_coefficients(const ThetaSequence& theta, int n) {
  if (n < 1) throw DomainError("dirichlet_coefficients: order must be >= 1");
  if (theta.size() != static_cast<std::size_t>(n))
    throw InputError("dirichlet_coefficients: theta has length " + std::to_string(theta.size()) + ", expected " +
                     std::to_string(n));
  const auto& t = theta.values;
  const int kmax = 2 * n - 1;
  std::vector<double> c(static_cast<std::size_t>(kmax), 0.0);
  for (int k = 1; k <= kmax; ++k) {
    double ck = 0.0;
    for (int i = k; i <= n - 1; ++i) ck += 2.0 * (t[i - k] - t[i]) * t[i];
    // unordered pairs i < j with i + j = k - 1, both inside the truncation
    for (int i = std::max(0, k - n); 2 * i < k - 1; ++i) ck += 2.0 * t[i] * t[k - 1 - i];
    if (k % 2 == 1) ck += t[(k - 1) / 2] * t[(k - 1) / 2];
    c[static_cast<std::size_t>(k - 1)] = ck;
  }
  return c;
}

/// Direct evaluation of <Theta, hat-G^(N)(gamma) Theta>.
inline double hat_gamma_form(const ThetaSequence& theta, double gamma) {
  const auto& t = theta.values;
  const std::size_t n = t.size();
  double diag = 0.0;
  double partial = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) partial += 2.0 * std::pow(static_cast<double>(i), -gamma);
    diag += partial * t[i] * t[i];
  }
  double off = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double kernel = std::pow(static_cast<double>(i + j + 1), -gamma);
      if (i != j) kernel += std::pow(std::abs(static_cast<double>(i) - static_cast<double>(j)), -gamma);
      off += t[i] * kernel * t[j];
    }
  return off - diag;
}

/// sum_k c_k / k^gamma.
inline double dirichlet_series(std::span<const double> coefficients, double gamma) {
  double s = 0.0;
  for (std::size_t k = 1; k <= coefficients.size(); ++k) s += coefficients[k - 1] * std::pow(static_cast<double>(k), -gamma);
  return s;
}

/// Conjectured lower bound (1/N^2) sum_{k=1}^{2N-1} min{k, 2N-k} / k^gamma on
/// <Theta, hat-G Theta> / <Theta, D Theta> over nonvanishing decreasing Theta.
/// Exploratory only.
inline double constant_sequence_ratio_bound(int n, double gamma) {
  double s = 0.0;
  for (int k = 1; k <= 2 * n - 1; ++k) s += std::min(k, 2 * n - k) * std::pow(static_cast<double>(k), -gamma);
  return s / (static_cast<double>(n) * n);
}

/// <Theta, D Theta> = sum (2n+1) theta_n^2.
inline double odd_weighted_norm(const ThetaSequence& theta) {
  double s = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) s += (2.0 * i + 1.0) * theta.values[i] * theta.values[i];
  return s;
}

/// Large-temperature coefficients of the rank-N Eliashberg eigenvalue:
/// g^(N)(2) and <G^(N)(4)>_2.
struct GammaAsymptotics {
  double g2 = 0.0;
  double expected_g4 = 0.0;
};

/// Memoized per N (measure independent); safe to call from many threads.
inline GammaAsymptotics gamma_asymptotics(int n) {
  static std::mutex mutex;
  static std::map<int, GammaAsymptotics> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  const EigenPair top = g_top(2.0, n);
  GammaAsymptotics value{top.value, rayleigh_quotient(assemble_gamma(4.0, n).matrix, top.vector)};
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(n, value);
  return value;
}

/// Truncation order used wherever the spectral radius g(2) itself is needed.
inline constexpr int kSpectralRadiusOrder = 256;

/// (1/2pi) sqrt(g(2)) = lim T_c / (sqrt(<omega^2>) sqrt(lambda)).
inline double asymptotic_tc_constant() {
  return std::sqrt(gamma_asymptotics(kSpectralRadiusOrder).g2) / (2.0 * std::numbers::pi);
}

}  // namespace eliashberg
