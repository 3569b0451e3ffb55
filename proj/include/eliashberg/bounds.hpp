#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "eliashberg/config.hpp"
#include "eliashberg/errors.hpp"
#include "eliashberg/gamma_model.hpp"
#include "eliashberg/measure.hpp"
#include "eliashberg/numerics/zeta.hpp"
#include "eliashberg/operator.hpp"

namespace eliashberg {

/// Constants of the spectral-radius bound k*.
struct BoundConstants {
  double epsilon = 0.65;
  /// b = 2 sqrt((2^{1+eps} - 1) zeta(1+eps) zeta(5-eps))
  double b = 0.0;
};

inline BoundConstants compute_bound_constants(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 4.0)) throw DomainError("bound constants: epsilon must lie in (0, 4)");
  const double b = 2.0 * std::sqrt((std::pow(2.0, 1.0 + epsilon) - 1.0) * riemann_zeta(1.0 + epsilon) *
                                   riemann_zeta(5.0 - epsilon));
  return {epsilon, b};
}

inline const BoundConstants& bound_constants() {
  static const BoundConstants constants = compute_bound_constants(0.65);
  return constants;
}

namespace detail {

inline void check_lambda(double lambda, const char* where) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    std::ostringstream msg;
    msg << where << ": coupling must be positive, got " << lambda;
    throw DomainError(msg.str());
  }
}

inline double two_pi() { return 2.0 * std::numbers::pi; }

}  // namespace detail

/// k*(P,T) = k^(1)(P,T) + b <varpi^2> >= k(P,T): a lower bound 1/k* on Lambda.
inline double k_star(const SpectralMeasure& m, Temperature t, const BoundConstants& c = bound_constants()) {
  return m.kernel_average(1, t) + c.b * m.mean_varpi_squared(t);
}

/// k#(P,T) = <varpi^2>/(<varpi^2>+1) + b <varpi^2> >= k*(P,T) (Jensen).
inline double k_sharp(const SpectralMeasure& m, Temperature t, const BoundConstants& c = bound_constants()) {
  const double x = m.mean_varpi_squared(t);
  return x / (x + 1.0) + c.b * x;
}

/// T_c# : the unique T with lambda k#(P,T) = 1. Proven upper bound on T_c.
inline double tc_sharp(const SpectralMeasure& m, double lambda, const BoundConstants& c = bound_constants()) {
  detail::check_lambda(lambda, "tc_sharp");
  const double a = lambda * (1.0 + c.b) - 1.0;
  const double root = a >= 0.0 ? 0.5 * (a + std::sqrt(a * a + 4.0 * c.b * lambda))
                                // same root, written without cancellation for a < 0
                                : 2.0 * c.b * lambda / (std::sqrt(a * a + 4.0 * c.b * lambda) - a);
  return std::sqrt(m.moment(2)) / detail::two_pi() * std::sqrt(root);
}

/// T_c-flat = (1/2pi) sqrt(lambda <omega^2> - Omega-bar^2): proven lower bound,
/// defined for lambda > Omega-bar^2 / <omega^2>.
inline std::optional<double> tc_flat(const SpectralMeasure& m, double lambda) {
  detail::check_lambda(lambda, "tc_flat");
  const double omega_bar = m.support_bound();
  const double arg = lambda * m.moment(2) - omega_bar * omega_bar;
  if (!(arg > 0.0)) return std::nullopt;
  return std::sqrt(arg) / detail::two_pi();
}

/// T_c~ = (1/2pi) sqrt(g(2) <omega^2> lambda): conjectured upper bound,
/// asymptotically sharp as lambda -> infinity.
inline double tc_tilde(const SpectralMeasure& m, double lambda) {
  detail::check_lambda(lambda, "tc_tilde");
  return asymptotic_tc_constant() * std::sqrt(m.moment(2) * lambda);
}

/// Proven bound on the temperature above which every k^(N) decreases in T.
inline double t_star(const SpectralMeasure& m) {
  return m.support_bound() / (2.0 * std::numbers::sqrt2 * std::numbers::pi);
}

/// Upper estimates of lambda_*(P), the coupling above which T_c is defined.
struct LambdaStarBounds {
  /// 1 / k^(4)(P, T_*)
  double strong = 0.0;
  /// (3/2) Omega-bar^2 / <omega^2>
  double easy = 0.0;
};

inline LambdaStarBounds lambda_star_bounds(const SpectralMeasure& m) {
  const double omega_bar = m.support_bound();
  return {1.0 / k_closed_form(m, Temperature{t_star(m)}, 4).k_value, 1.5 * omega_bar * omega_bar / m.moment(2)};
}

/// Two-term large-lambda asymptotic T_c^(N), from
/// k^(N) ~ g <omega^2>/(4 pi^2 T^2) - <G(4)>_2 <omega^4>/(16 pi^4 T^4).
inline double tc_asymptotic(const SpectralMeasure& m, double lambda, int n) {
  detail::check_lambda(lambda, "tc_asymptotic");
  const GammaAsymptotics g = gamma_asymptotics(n);
  const double w2 = m.moment(2);
  const double w4 = m.moment(4);
  const double threshold = 4.0 * g.expected_g4 * w4 / (g.g2 * g.g2 * w2 * w2);
  const double x = threshold / lambda;
  if (x > 1.0) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "tc_asymptotic: needs lambda >= " << threshold << " for N = " << n << ", got " << lambda;
    throw DomainError(msg.str());
  }
  const double one_minus_sqrt = x / (1.0 + std::sqrt(1.0 - x));
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return 1.0 / std::sqrt(2.0 * pi2 * (g.g2 * w2) / (g.expected_g4 * w4) * one_minus_sqrt);
}

}  // namespace eliashberg
