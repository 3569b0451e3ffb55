#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eliashberg/bounds.hpp"
#include "eliashberg/config.hpp"
#include "eliashberg/errors.hpp"
#include "eliashberg/measure.hpp"
#include "eliashberg/numerics/bisect.hpp"
#include "eliashberg/operator.hpp"

namespace eliashberg {

/// How much of an inverted T_c^(N) is backed by a monotonicity proof.
enum class TcStatus {
  /// N <= 2 (monotone on all T > 0), or the solution lies above T_*.
  proven,
  /// N >= 3 below T_*: computed, but uniqueness of the crossing is unproven.
  heuristic,
  /// lambda <= lambda_N: the rank-N approximant never reaches down to lambda.
  undefined,
};

inline std::string to_string(TcStatus s) {
  switch (s) {
    case TcStatus::proven:
      return "proven";
    case TcStatus::heuristic:
      return "heuristic";
    case TcStatus::undefined:
      break;
  }
  return "undefined";
}

struct TcEntry {
  int n = 0;
  std::optional<double> value;
  TcStatus status = TcStatus::undefined;
};

/// Where the rank-N inversion is meaningful.
struct InversionDomain {
  double t_star = 0.0;
  double lambda_n_floor = 0.0;
  double lambda_star_easy = 0.0;
};

inline InversionDomain inversion_domain(const SpectralMeasure& m, int n) {
  const double omega_bar = m.support_bound();
  return {t_star(m), k_limit_T0(n).lambda_n, 1.5 * omega_bar * omega_bar / m.moment(2)};
}

/// Lambda^(N)(P,T) = 1 / k^(N)(P,T).
inline double lambda_upper(const SpectralMeasure& m, Temperature t, int n,
                           const Tolerances& tol = default_tolerances()) {
  return 1.0 / k_value(m, t, n, tol);
}

/// Solves Lambda^(N)(P,T) = lambda for T.
///
/// `lower_hint`, when given, must be a temperature where Lambda^(N) <= lambda
/// (for instance T_c^(M) for some M < N); it only narrows the bracket.
inline TcEntry tc_n(const SpectralMeasure& m, double lambda, int n, const Tolerances& tol = default_tolerances(),
                    std::optional<double> lower_hint = std::nullopt) {
  detail::check_lambda(lambda, "tc_n");
  detail::check_order(n);
  TcEntry entry{n, std::nullopt, TcStatus::undefined};
  if (lambda <= k_limit_T0(n).lambda_n) return entry;

  const double t_min_proven = t_star(m);
  auto finish = [&](double t) {
    entry.value = t;
    entry.status = (n <= 2 || t >= t_min_proven) ? TcStatus::proven : TcStatus::heuristic;
    return entry;
  };

  if (n == 1 && m.is_single_atom())
    return finish(m.support_bound() / (2.0 * std::numbers::pi) * std::sqrt(lambda - 1.0));

  auto big_lambda = [&](double t) { return lambda_upper(m, Temperature{t}, n, tol); };

  double hi = 2.0 * tc_sharp(m, lambda);
  double lo = 0.0;
  if (lower_hint && *lower_hint > 0.0 && *lower_hint < hi && big_lambda(*lower_hint) <= lambda) {
    lo = *lower_hint;
    // The next rung is usually within a percent of the previous one.
    const double near = lo * 1.01;
    if (near < hi && big_lambda(near) >= lambda) hi = near;
  } else {
    const std::optional<double> flat = tc_flat(m, lambda);
    lo = flat ? 0.5 * *flat : 1e-6 * hi;
    for (int expand = 0; big_lambda(lo) > lambda; ++expand) {
      if (expand > 100 || lo < 1e-300) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "tc_n: cannot bracket Lambda^(" << n << ") = " << lambda << " from below; Lambda(" << lo
            << ") = " << big_lambda(lo);
        throw BracketError(msg.str(), big_lambda(lo), big_lambda(hi));
      }
      lo *= 1e-3;
    }
  }
  if (!(big_lambda(hi) >= lambda)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "tc_n: Lambda^(" << n << ")(" << hi << ") = " << big_lambda(hi) << " stays below lambda = " << lambda;
    throw BracketError(msg.str(), big_lambda(lo), big_lambda(hi));
  }
  // Geometric bisection first, so the final bisection in T^2 is relative to T_c.
  while (hi > 2.0 * lo) {
    const double mid = std::sqrt(lo * hi);
    if (big_lambda(mid) > lambda)
      hi = mid;
    else
      lo = mid;
  }
  const double t2 = bisect_monotone([&](double u) { return big_lambda(std::sqrt(u)); }, lo * lo, hi * hi, lambda,
                                    tol.bisection_tol);
  return finish(std::sqrt(t2));
}

/// Everything known about T_c(lambda, P) from one run of the ladder.
struct TcReport {
  double lambda = 0.0;
  SpectralMeasure measure;
  /// Rungs N = 1, 2, 3, then 4, 8, 16, ... in increasing N.
  std::vector<TcEntry> ladder;
  /// Proven lower bound; absent for lambda <= Omega-bar^2 / <omega^2>.
  std::optional<double> tc_flat;
  /// Proven upper bound.
  double tc_sharp = 0.0;
  /// Conjectured upper bound.
  double tc_tilde = 0.0;
  LambdaStarBounds lambda_star;
  std::optional<double> converged_tc;
  std::optional<int> converged_n;
  double tolerance = 0.0;
};

inline constexpr int kLadderStart = 4;
inline constexpr int kLadderCap = 1024;

/// Doubles N from 4 until consecutive rungs agree to `rel_tol`, or N hits the cap.
inline TcReport tc_converged(const SpectralMeasure& m, double lambda, double rel_tol,
                             const Tolerances& tol = default_tolerances(), int n_cap = kLadderCap) {
  detail::check_lambda(lambda, "tc_converged");
  if (!(rel_tol > 0.0)) throw DomainError("tc_converged: tolerance must be positive");
  TcReport report{lambda, m, {}, tc_flat(m, lambda), tc_sharp(m, lambda), tc_tilde(m, lambda),
                  lambda_star_bounds(m), std::nullopt, std::nullopt, rel_tol};

  std::optional<double> hint;
  for (int n = 1; n < kLadderStart; ++n) {
    report.ladder.push_back(tc_n(m, lambda, n, tol, hint));
    if (report.ladder.back().value) hint = report.ladder.back().value;
  }
  std::optional<double> previous;
  for (int n = kLadderStart; n <= n_cap; n *= 2) {
    TcEntry entry = tc_n(m, lambda, n, tol, hint);
    report.ladder.push_back(entry);
    if (!entry.value) continue;
    hint = entry.value;
    if (previous && std::abs(*entry.value - *previous) <= rel_tol * *entry.value) {
      report.converged_tc = entry.value;
      report.converged_n = n;
      break;
    }
    previous = entry.value;
  }
  return report;
}

}  // namespace eliashberg
