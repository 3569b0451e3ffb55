#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "eliashberg/config.hpp"
#include "eliashberg/errors.hpp"
#include "eliashberg/measure.hpp"
#include "eliashberg/numerics/eigen.hpp"
#include "eliashberg/numerics/power_iteration.hpp"
#include "eliashberg/numerics/sym_matrix.hpp"

namespace eliashberg {

/// Above this dimensionless frequency (smallest atom / 2 pi T) every kernel
/// average equals 1 in double precision and the T -> 0 limit is used instead.
inline constexpr double kDegenerateVarpi = 1e8;

/// Rank-N truncation K^(N)(P,T) = -K1 + K2 + K3 of the stability operator.
struct EliashbergOperator {
  SpectralMeasure measure;
  Temperature temperature;
  /// kernel_cache[k-1] = <[[k]]>, k = 1 .. 2N-1: the only measure dependence.
  std::vector<double> kernel_cache;
  /// Diagonal of K1.
  std::vector<double> k1_diagonal;
  SymMatrix matrix;

  std::size_t order() const noexcept { return matrix.order(); }

  /// K2 + K3, the nonnegative part of the operator.
  SymMatrix coupling() const {
    SymMatrix c = matrix;
    for (std::size_t i = 0; i < order(); ++i) c.set(i, i, matrix(i, i) + k1_diagonal[i]);
    return c;
  }
};

/// Rank-N truncation together with the bound it implies on the critical coupling.
struct KBound {
  int n = 0;
  /// Top eigenvalue k^(N)(P,T).
  double k_value = 0.0;
  /// Lambda^(N) = 1 / k^(N): an upper bound on the critical coupling.
  double lambda_upper = 0.0;
  std::vector<double> eigvec;
};

namespace detail {

inline void check_order(int n) {
  if (n < 1) throw DomainError("Eliashberg operator: truncation order must be >= 1");
}

inline void check_temperature(Temperature t) {
  if (!(t.value > 0.0) || !std::isfinite(t.value))
    throw DomainError("Eliashberg operator: temperature must be positive and finite");
}

/// Assembles -K1 + K2 + K3 from the averages a[k-1] = <[[k]]>, k = 1..2N-1.
inline SymMatrix assemble_from_averages(std::span<const double> averages, std::size_t order,
                                        std::vector<double>* k1_diagonal = nullptr) {
  if (averages.size() < 2 * order - 1) throw InputError("assemble: need 2N-1 kernel averages");
  auto avg = [averages](std::size_t k) { return averages[k - 1]; };
  std::vector<double> inv_sqrt_odd(order);
  for (std::size_t i = 0; i < order; ++i) inv_sqrt_odd[i] = 1.0 / std::sqrt(2.0 * i + 1.0);
  if (k1_diagonal) k1_diagonal->assign(order, 0.0);

  SymMatrix m(order);
  double partial = 0.0;  // sum_{k=1}^{i} <[[k]]>
  for (std::size_t i = 0; i < order; ++i) {
    if (i > 0) partial += avg(i);
    const double k1 = 2.0 * partial / (2.0 * i + 1.0);
    if (k1_diagonal) (*k1_diagonal)[i] = k1;
    for (std::size_t j = i; j < order; ++j) {
      double kernel = avg(i + j + 1);
      if (j != i) kernel += avg(j - i);
      double entry = inv_sqrt_odd[i] * kernel * inv_sqrt_odd[j];
      if (j == i) entry -= k1;
      m.set(i, j, entry);
    }
  }
  return m;
}

inline bool is_degenerate_low_t(const SpectralMeasure& m, Temperature t) {
  return m.is_atomic() && m.min_frequency() / (2.0 * std::numbers::pi * t.value) > kDegenerateVarpi;
}

inline KBound make_bound(int n, double k, std::vector<double> v) {
  return KBound{n, k, 1.0 / k, std::move(v)};
}

/// Determinant of a small matrix by partial-pivot elimination.
inline double small_det(std::vector<double> a, std::size_t n) {
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (a[piv * n + c] == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      det = -det;
    }
    det *= a[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
    }
  }
  return det;
}

inline double small_det(const SymMatrix& m) {
  return small_det(std::vector<double>(m.data().begin(), m.data().end()), m.order());
}

inline double minor_det(const SymMatrix& m, std::size_t skip_row, std::size_t skip_col) {
  const std::size_t n = m.order();
  std::vector<double> a;
  a.reserve((n - 1) * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    if (i == skip_row) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (j != skip_col) a.push_back(m(i, j));
  }
  return small_det(std::move(a), n - 1);
}

/// Eigenvector of a small symmetric matrix for a known simple eigenvalue:
/// the largest column of adj(M - k I).
inline std::vector<double> small_null_vector(const SymMatrix& m, double k) {
  const std::size_t n = m.order();
  if (n == 1) return {1.0};
  SymMatrix shifted = m;
  shifted.add_to_diagonal(-k);
  std::vector<double> best;
  double best_norm = -1.0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> v(n);
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = ((i + j) % 2 == 0 ? 1.0 : -1.0) * minor_det(shifted, j, i);
      norm += v[i] * v[i];
    }
    if (norm > best_norm) {
      best_norm = norm;
      best = std::move(v);
    }
  }
  if (!(best_norm > 0.0)) throw NumericalError("k_closed_form: top eigenvalue is not simple");
  normalize(best);
  sign_normalize(best);
  return best;
}

inline double clamped_arccos_argument(double arg, bool degenerate, const char* where) {
  if (std::abs(arg) <= 1.0) return arg;
  if (std::abs(arg) - 1.0 <= 1e-12 || degenerate) return std::clamp(arg, -1.0, 1.0);
  std::ostringstream msg;
  msg.precision(17);
  msg << where << ": arccos argument " << arg << " outside [-1, 1]";
  throw NumericalError(msg.str());
}

inline double sym_trace_of_product(const SymMatrix& a, const SymMatrix& b) {
  double t = 0.0;
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j) t += a(i, j) * b(j, i);
  return t;
}

inline SymMatrix sym_square(const SymMatrix& a) {
  const std::size_t n = a.order();
  SymMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += a(i, k) * a(k, j);
      out.set(i, j, s);
    }
  return out;
}

/// Largest root of the characteristic polynomial of a 3x3 symmetric matrix,
/// trigonometric form.
inline double top_root_3x3(const SymMatrix& m) {
  const double tr = m.trace();
  const double adj = minor_det(m, 0, 0) + minor_det(m, 1, 1) + minor_det(m, 2, 2);
  const double det = small_det(m);
  const double p = tr * tr / 3.0 - adj;
  const double q = 2.0 * tr * tr * tr / 27.0 - tr * adj / 3.0 + det;
  if (!(p > 0.0)) throw NumericalError("k_closed_form(N=3): p <= 0 (triple eigenvalue)");
  const double arg = clamped_arccos_argument(0.5 * q * std::sqrt(std::pow(3.0 / p, 3)), false, "k_closed_form(N=3)");
  return (tr + 6.0 * std::sqrt(p / 3.0) * std::cos(std::acos(arg) / 3.0)) / 3.0;
}

/// Largest root of the characteristic polynomial of a 4x4 symmetric matrix via
/// the resolvent cubic (Ferrari). The sign in front of the (A^3 - 4AB + 8C)
/// term is negative: it selects the largest of the four roots.
inline double top_root_4x4(const SymMatrix& m) {
  const SymMatrix m2 = sym_square(m);
  const double t1 = m.trace();
  const double t2 = m2.trace();
  const double t3 = sym_trace_of_product(m2, m);
  const double a = -t1;
  const double b = 0.5 * (t1 * t1 - t2);
  const double c = -(t1 * t1 * t1 - 3.0 * t2 * t1 + 2.0 * t3) / 6.0;
  const double d = small_det(m);
  const double x = 2.0 * b * b * b - 9.0 * a * b * c + 27.0 * c * c + 27.0 * a * a * d - 72.0 * b * d;
  const double y = b * b - 3.0 * a * c + 12.0 * d;
  const double scale = b * b + 3.0 * std::abs(a * c) + 12.0 * std::abs(d);
  // Y at roundoff level: the resolvent cubic has a triple root and its angle
  // is irrelevant to Z.
  const bool degenerate = y <= 1e-9 * scale;
  const double sqrt_y = std::sqrt(std::max(y, 0.0));
  double arg = degenerate ? 1.0 : x / (2.0 * sqrt_y * sqrt_y * sqrt_y);
  arg = clamped_arccos_argument(arg, degenerate, "k_closed_form(N=4)");
  const double z = (sqrt_y * std::cos(std::acos(arg) / 3.0) - b + 0.375 * a * a) / 3.0;
  if (!(z > 0.0)) throw NumericalError("k_closed_form(N=4): resolvent root Z <= 0");
  const double inner =
      0.1875 * a * a - 0.5 * b - 0.5 * z - (a * a * a - 4.0 * a * b + 8.0 * c) / (16.0 * std::sqrt(2.0 * z));
  return std::sqrt(0.5 * z) + std::sqrt(std::max(inner, 0.0)) - 0.25 * a;
}

}  // namespace detail

/// Kernel averages <[[k]]> for k = 1 .. 2N-1.
inline std::vector<double> kernel_averages(const SpectralMeasure& m, Temperature t, int n,
                                           const Tolerances& tol = default_tolerances()) {
  detail::check_order(n);
  detail::check_temperature(t);
  std::vector<double> avg(static_cast<std::size_t>(2 * n - 1));
  for (int k = 1; k <= 2 * n - 1; ++k) avg[static_cast<std::size_t>(k - 1)] = m.kernel_average(k, t, tol.quadrature_tol);
  return avg;
}

inline EliashbergOperator assemble_k(const SpectralMeasure& m, Temperature t, int n,
                                     const Tolerances& tol = default_tolerances()) {
  EliashbergOperator op{m, t, kernel_averages(m, t, n, tol), {}, {}};
  op.matrix = detail::assemble_from_averages(op.kernel_cache, static_cast<std::size_t>(n), &op.k1_diagonal);
  return op;
}

/// k^(N)_0 = lim_{T->0} k^(N) = -1 + 2 sum_{k<N} 1/(2k+1), and lambda_N = 1/k^(N)_0.
struct LowTemperatureLimit {
  double k0 = 0.0;
  double lambda_n = 0.0;
};

inline LowTemperatureLimit k_limit_T0(int n) {
  detail::check_order(n);
  // Exact rational p/q while it fits, so lambda_N = q/p rounds once.
  std::uint64_t p = 1;
  std::uint64_t q = 1;
  bool exact = true;
  for (int k = 1; k < n && exact; ++k) {
    const std::uint64_t d = 2 * static_cast<std::uint64_t>(k) + 1;
    std::uint64_t num = 0;
    std::uint64_t den = 0;
    std::uint64_t pd = 0;
    exact = !__builtin_mul_overflow(p, d, &pd) && !__builtin_add_overflow(pd, q, &num) &&
            !__builtin_mul_overflow(q, d, &den);
    if (!exact) break;
    const std::uint64_t g = std::gcd(num, den);
    p = num / g;
    q = den / g;
  }
  if (exact && 2 * p > q && p < (std::uint64_t{1} << 62)) {
    // k0 = 2 p/q - 1 = (2p - q)/q
    const std::uint64_t top = 2 * p - q;
    return {static_cast<double>(top) / static_cast<double>(q), static_cast<double>(q) / static_cast<double>(top)};
  }
  double s = 0.0;
  for (int k = n - 1; k >= 0; --k) s += 1.0 / (2.0 * k + 1.0);
  const double k0 = -1.0 + 2.0 * s;
  return {k0, 1.0 / k0};
}

namespace detail {

/// Limit operator -I + 2 u u^T has top eigenvector u / |u|, u_n = 1/sqrt(2n+1).
inline KBound low_temperature_bound(int n) {
  std::vector<double> u(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(2.0 * i + 1.0);
  normalize(u);
  return make_bound(n, k_limit_T0(n).k0, std::move(u));
}

}  // namespace detail

/// k^(N) for N in {1,2,3,4} from the explicit root formulas.
inline KBound k_closed_form(const SpectralMeasure& m, Temperature t, int n,
                            const Tolerances& tol = default_tolerances()) {
  if (n < 1 || n > 4) throw DomainError("k_closed_form: closed forms exist for N = 1..4 only");
  detail::check_temperature(t);
  if (detail::is_degenerate_low_t(m, t)) return detail::low_temperature_bound(n);
  const SymMatrix k = assemble_k(m, t, n, tol).matrix;
  double value = 0.0;
  switch (n) {
    case 1:
      value = k(0, 0);
      break;
    case 2: {
      const double tr = k.trace();
      const double det = k(0, 0) * k(1, 1) - k(0, 1) * k(0, 1);
      value = 0.5 * (tr + std::sqrt(tr * tr - 4.0 * det));
      break;
    }
    case 3:
      value = detail::top_root_3x3(k);
      break;
    default:
      value = detail::top_root_4x4(k);
      break;
  }
  return detail::make_bound(n, value, detail::small_null_vector(k, value));
}

/// k^(N) from the dense symmetric eigensolver, any N.
inline KBound k_numeric(const SpectralMeasure& m, Temperature t, int n, const Tolerances& tol = default_tolerances()) {
  detail::check_order(n);
  detail::check_temperature(t);
  if (detail::is_degenerate_low_t(m, t)) return detail::low_temperature_bound(n);
  EigenPair top = sym_eig_top(assemble_k(m, t, n, tol).matrix, tol);
  return detail::make_bound(n, top.value, std::move(top.vector));
}

/// k^(N) without the eigenvector; the hot path of T_c inversion.
inline double k_value(const SpectralMeasure& m, Temperature t, int n, const Tolerances& tol = default_tolerances()) {
  detail::check_order(n);
  detail::check_temperature(t);
  if (detail::is_degenerate_low_t(m, t)) return k_limit_T0(n).k0;
  if (n == 1) return m.kernel_average(1, t, tol.quadrature_tol);
  return sym_eig_top_value(assemble_k(m, t, n, tol).matrix, tol);
}

/// Lambda^(2) from the explicit reciprocal formula.
inline double lambda2_closed(const SpectralMeasure& m, Temperature t, const Tolerances& tol = default_tolerances()) {
  detail::check_temperature(t);
  if (detail::is_degenerate_low_t(m, t)) return k_limit_T0(2).lambda_n;
  const std::vector<double> a = kernel_averages(m, t, 2, tol);
  const double s13 = a[0] + a[2];
  const double s12 = a[0] + a[1];
  const double disc = s13 * s13 + 12.0 * (s12 * s12 + a[0] * (2.0 * a[0] - a[2]));
  return 6.0 / (s13 + std::sqrt(disc));
}

/// Spectral radius of C(1/lambda) = (I/lambda + K1)^-1 (K2 + K3) at rank N.
/// Below 1 exactly when lambda < Lambda^(N); equal to 1 at lambda = Lambda^(N).
inline double c_spectral_radius(const SpectralMeasure& m, Temperature t, double lambda, int n,
                                const Tolerances& tol = default_tolerances()) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("c_spectral_radius: lambda must be positive");
  const EliashbergOperator op = assemble_k(m, t, n, tol);
  const SymMatrix coupling = op.coupling();
  const double eta = 1.0 / lambda;
  std::vector<double> inv_diag(op.order());
  for (std::size_t i = 0; i < op.order(); ++i) inv_diag[i] = 1.0 / (eta + op.k1_diagonal[i]);
  auto apply = [&](std::span<const double> x, std::span<double> y) {
    coupling.multiply(x, y);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] *= inv_diag[i];
  };
  return power_iteration_positive(apply, op.order(), tol.power_tol, tol.power_max_iterations);
}

/// Both sides of the identity for d/dT^2 (3<[[1]]> + 2<[[2]]> - <[[3]]>).
struct DerivativeCheck {
  /// Richardson-extrapolated central difference in T^2.
  double finite_difference = 0.0;
  /// 4 pi^2 times the closed polynomial integrand average (the integrand
  /// itself is the derivative with respect to 4 pi^2 T^2).
  double closed_form = 0.0;
  double residual = 0.0;
};

inline constexpr std::array<double, 5> kDerivativeCoefficients{4392.0, 3888.0, 1370.0, 148.0, 2.0};

inline DerivativeCheck dk_dT2_identity_check(const SpectralMeasure& m, Temperature t,
                                             const Tolerances& tol = default_tolerances()) {
  detail::check_temperature(t);
  constexpr double pi = std::numbers::pi;
  const double quad_tol = std::min(tol.quadrature_tol, 1e-13);
  auto combination = [&](double t2) {
    const Temperature tt{std::sqrt(t2)};
    return 3.0 * m.kernel_average(1, tt, quad_tol) + 2.0 * m.kernel_average(2, tt, quad_tol) -
           m.kernel_average(3, tt, quad_tol);
  };
  const double t2 = t.value * t.value;
  auto central = [&](double h) { return (combination(t2 + h) - combination(t2 - h)) / (2.0 * h); };
  const double h = 1e-3 * t2;
  const double fd = (4.0 * central(0.5 * h) - central(h)) / 3.0;

  const double s = 4.0 * pi * pi * t2;
  const double closed = -4.0 * pi * pi * m.average(
                                              [s](double w) {
                                                const double w2 = w * w;
                                                double num = 0.0;
                                                double w2n = 1.0;
                                                for (int k = 1; k <= 5; ++k) {
                                                  w2n *= w2;
                                                  num += kDerivativeCoefficients[static_cast<std::size_t>(k - 1)] *
                                                         w2n * std::pow(s, 5 - k);
                                                }
                                                double den = 1.0;
                                                for (int j = 1; j <= 3; ++j) {
                                                  const double f = j * j * s + w2;
                                                  den *= f * f;
                                                }
                                                return num / den;
                                              },
                                              quad_tol);
  return {fd, closed, std::abs(fd - closed) / std::abs(closed)};
}

}  // namespace eliashberg
