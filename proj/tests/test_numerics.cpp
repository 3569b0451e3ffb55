#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "eliashberg/numerics.hpp"
#include "oracles.hpp"

using namespace eliashberg;

namespace {

SymMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m.set(i, j, g(rng));
  return m;
}

oracle::Dense dense(const SymMatrix& m) {
  oracle::Dense d(m.order(), std::vector<double>(m.order()));
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j) d[i][j] = m(i, j);
  return d;
}

}  // namespace

TEST(SymMatrix, RejectsAsymmetricInitializer) {
  EXPECT_THROW((SymMatrix{{1.0, 2.0}, {3.0, 1.0}}), InputError);
  EXPECT_THROW((SymMatrix{{1.0, 2.0}}), InputError);
  const SymMatrix m{{1.0, 2.0}, {2.0, 5.0}};
  EXPECT_EQ(m(1, 0), 2.0);
  EXPECT_EQ(m.trace(), 6.0);
}

TEST(SymMatrix, SetMirrorsAndLeadingBlock) {
  SymMatrix m(3);
  m.set(0, 2, 4.0);
  EXPECT_EQ(m(2, 0), 4.0);
  const SymMatrix b = m.leading_block(2);
  EXPECT_EQ(b.order(), 2u);
  EXPECT_EQ(b(0, 1), 0.0);
}

TEST(SymEigTop, IdentityAndDiagonal) {
  EXPECT_DOUBLE_EQ(sym_eig_top_value(SymMatrix{{1.0, 0.0}, {0.0, 1.0}}), 1.0);
  const EigenPair p = sym_eig_top(SymMatrix{{2.0, 0.0, 0.0}, {0.0, 7.0, 0.0}, {0.0, 0.0, -9.0}});
  EXPECT_NEAR(p.value, 7.0, 1e-14);
  EXPECT_NEAR(p.vector[1], 1.0, 1e-14);
}

TEST(SymEigTop, TwoByTwoClosedForm) {
  const EigenPair p = sym_eig_top(SymMatrix{{2.0, 1.0}, {1.0, 2.0}});
  EXPECT_NEAR(p.value, 3.0, 1e-14);
  EXPECT_NEAR(p.vector[0], 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(p.vector[1], 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(SymEigTop, MatchesInertiaOracleAcrossOrders) {
  std::mt19937_64 rng(1);
  for (std::size_t n : {1u, 2u, 3u, 4u, 7u, 16u, 32u, 33u, 50u, 70u}) {
    const SymMatrix m = random_symmetric(rng, n);
    const double expected = oracle::top_eigenvalue(dense(m));
    const EigenPair p = sym_eig_top(m);
    EXPECT_NEAR(p.value, expected, 1e-11 * std::max(1.0, std::abs(expected))) << "order " << n;
    EXPECT_NEAR(sym_eig_top_value(m), p.value, 1e-12 * std::max(1.0, std::abs(expected)));
    double norm = 0.0;
    for (double v : p.vector) norm += v * v;
    EXPECT_NEAR(norm, 1.0, 1e-12);
  }
}

TEST(SymEigTop, JacobiAndLibraryPathsAgree) {
  std::mt19937_64 rng(2);
  Tolerances jacobi = default_tolerances();
  jacobi.jacobi_max_order = 100;
  Tolerances library = default_tolerances();
  library.jacobi_max_order = 0;
  for (std::size_t n : {5u, 20u, 48u}) {
    const SymMatrix m = random_symmetric(rng, n);
    const EigenPair a = sym_eig_top(m, jacobi);
    const EigenPair b = sym_eig_top(m, library);
    EXPECT_NEAR(a.value, b.value, 1e-11);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(a.vector[i], b.vector[i], 1e-8);
  }
}

TEST(SymEigTop, RayleighQuotientNeverExceedsTop) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 45;
    const SymMatrix m = random_symmetric(rng, n);
    const double top = sym_eig_top_value(m);
    std::vector<double> x(n);
    for (double& v : x) v = g(rng);
    double nx = 0.0;
    for (double v : x) nx += v * v;
    const std::vector<double> mx = m * x;
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) q += x[i] * mx[i];
    EXPECT_LE(q / nx, top + 1e-10);
  }
}

TEST(SymEigTop, ShiftCovariance) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    SymMatrix m = random_symmetric(rng, 1 + trial * 3);
    const double c = u(rng);
    const double before = sym_eig_top_value(m);
    m.add_to_diagonal(c);
    EXPECT_NEAR(sym_eig_top_value(m), before + c, 1e-10 * std::max(1.0, std::abs(before + c)));
  }
}

TEST(SymEigTop, RejectsNonFinite) {
  SymMatrix m(2);
  m.set(0, 1, std::numeric_limits<double>::quiet_NaN());
  EXPECT_THROW(sym_eig_top(m), InputError);
}

TEST(SymEigTop, SmallExamples) {
  const EigenPair one = sym_eig_top(SymMatrix{{0.5}});
  EXPECT_EQ(one.value, 0.5);
  EXPECT_EQ(one.vector, std::vector<double>{1.0});
  const EigenPair swap = sym_eig_top(SymMatrix{{0.0, 1.0}, {1.0, 0.0}});
  EXPECT_NEAR(swap.value, 1.0, 1e-15);
  EXPECT_NEAR(swap.vector[0], 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(swap.vector[1], 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(SymEigTop, PerronVectorIsPositive) {
  const SymMatrix m{{0.0, 1.0, 0.5}, {1.0, 0.0, 2.0}, {0.5, 2.0, 0.0}};
  const EigenPair p = sym_eig_top(m);
  for (double v : p.vector) EXPECT_GT(v, 0.0);
}

TEST(PowerIteration, PermutationMatrixHasRadiusOne) {
  const double r = power_iteration_positive(
      [](std::span<const double> x, std::span<double> y) {
        y[0] = x[1];
        y[1] = x[0];
      },
      2, 1e-12, 100000);
  EXPECT_NEAR(r, 1.0, 1e-12);
}

TEST(PowerIteration, MatchesEigensolverOnPositiveMatrix) {
  const SymMatrix m{{2.0, 1.0, 0.1}, {1.0, 3.0, 0.4}, {0.1, 0.4, 1.0}};
  const double r =
      power_iteration_positive([&](std::span<const double> x, std::span<double> y) { m.multiply(x, y); }, 3, 1e-13,
                               100000);
  EXPECT_NEAR(r, oracle::top_eigenvalue({{2.0, 1.0, 0.1}, {1.0, 3.0, 0.4}, {0.1, 0.4, 1.0}}), 1e-12);
}

TEST(PowerIteration, ZeroMapAndConeViolation) {
  EXPECT_EQ(power_iteration_positive([](std::span<const double>, std::span<double> y) { y[0] = y[1] = 0.0; }, 2,
                                     1e-12, 10),
            0.0);
  EXPECT_THROW(power_iteration_positive(
                   [](std::span<const double> x, std::span<double> y) {
                     y[0] = -x[0];
                     y[1] = x[1];
                   },
                   2, 1e-12, 10),
               InputError);
}

TEST(Zeta, KnownClosedForms) {
  const double pi = std::numbers::pi;
  EXPECT_NEAR(riemann_zeta(2.0), pi * pi / 6.0, 1e-12);
  EXPECT_NEAR(riemann_zeta(4.0), pi * pi * pi * pi / 90.0, 1e-12);
  EXPECT_NEAR(riemann_zeta(1.65), 2.16, 5e-3);
}

TEST(Zeta, MatchesDirectSummation) {
  for (double s : {1.3, 1.65, 2.0, 3.0, 4.35, 5.0}) EXPECT_NEAR(riemann_zeta(s), oracle::zeta(s), 1e-10) << "s = " << s;
}

TEST(Zeta, DomainError) {
  EXPECT_THROW(riemann_zeta(1.0), DomainError);
  EXPECT_THROW(riemann_zeta(0.5), DomainError);
}

TEST(Bisect, ExampleFunctions) {
  EXPECT_NEAR(bisect_monotone([](double x) { return x; }, 0.0, 1.0, 0.3, 1e-12), 0.3, 1e-12);
  EXPECT_NEAR(bisect_monotone([](double x) { return x * x; }, 0.0, 10.0, 4.0, 1e-12), 2.0, 1e-11);
  // Einstein mode at Omega = 1: 1/k^(1)(T) = 1 + 4 pi^2 T^2 equals 2 at T = 1/(2 pi).
  EXPECT_NEAR(bisect_monotone([](double t) { return 1.0 + 4.0 * std::numbers::pi * std::numbers::pi * t * t; }, 0.0,
                              1.0, 2.0, 1e-13),
              0.5 / std::numbers::pi, 1e-12);
}

TEST(Bisect, DecreasingFunctionDetected) {
  EXPECT_NEAR(bisect_monotone([](double x) { return 1.0 - x; }, 0.0, 1.0, 0.25, 1e-12), 0.75, 1e-12);
}

TEST(Bisect, UnbracketedTargetReportsEndpoints) {
  try {
    bisect_monotone([](double x) { return x; }, 0.0, 1.0, 3.0, 1e-12);
    FAIL() << "expected BracketError";
  } catch (const BracketError& e) {
    EXPECT_EQ(e.f_lo(), 0.0);
    EXPECT_EQ(e.f_hi(), 1.0);
  }
}

TEST(Quadrature, Examples) {
  EXPECT_NEAR(integrate_adaptive([](double) { return 1.0; }, 0.0, 1.0, 1e-12), 1.0, 1e-14);
  EXPECT_NEAR(integrate_adaptive([](double w) { return 2.0 * w; }, 0.0, 1.0, 1e-12), 1.0, 1e-14);
  EXPECT_NEAR(integrate_adaptive([](double w) { return 2.0 * w * w * w / (w * w + 1.0); }, 0.0, 1.0, 1e-12),
              1.0 - std::log(2.0), 1e-12);
}

TEST(Quadrature, NonFiniteIntegrandReportsAbscissa) {
  try {
    integrate_adaptive([](double w) { return w > 0.5 ? std::numeric_limits<double>::infinity() : 1.0; }, 0.0, 1.0,
                       1e-10);
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError& e) {
    EXPECT_GT(e.abscissa(), 0.5);
  }
}
