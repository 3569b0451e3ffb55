#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "eliashberg/gamma_model.hpp"
#include "oracles.hpp"

using namespace eliashberg;

TEST(AssembleGamma, MatchesTermByTermDefinition) {
  for (double gamma : {1.0, 2.0, 4.0, 0.7}) {
    for (int n : {1, 2, 5, 12}) {
      const SymMatrix m = assemble_gamma(gamma, n).matrix;
      const oracle::Dense d = oracle::gamma_matrix(gamma, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) EXPECT_NEAR(m(i, j), d[i][j], 1e-15) << gamma << " " << n << " " << i << j;
    }
  }
}

TEST(AssembleGamma, HandEvaluatedEntries) {
  EXPECT_EQ(assemble_gamma(2.0, 1).matrix(0, 0), 1.0);
  EXPECT_EQ(assemble_gamma(4.0, 1).matrix(0, 0), 1.0);
  EXPECT_NEAR(assemble_gamma(2.0, 2).matrix(0, 1), 5.0 / (4.0 * std::sqrt(3.0)), 1e-15);
  EXPECT_THROW(assemble_gamma(0.0, 2), DomainError);
  EXPECT_THROW(assemble_gamma(2.0, 0), DomainError);
}

TEST(GTop, SmallOrders) {
  EXPECT_EQ(g_top(2.0, 1).value, 1.0);
  EXPECT_EQ(g_top(4.0, 1).value, 1.0);
  const SymMatrix m = assemble_gamma(2.0, 2).matrix;
  const double tr = m(0, 0) + m(1, 1);
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1);
  EXPECT_NEAR(g_top(2.0, 2).value, 0.5 * (tr + std::sqrt(tr * tr - 4.0 * det)), 1e-14);
}

TEST(GTop, MatchesInertiaOracle) {
  for (int n : {3, 10, 40})
    EXPECT_NEAR(g_top(2.0, n).value, oracle::top_eigenvalue(oracle::gamma_matrix(2.0, n)), 1e-12);
}

TEST(GTop, AtLeastOneAndIncreasing) {
  for (double gamma : {1.0, 2.0, 4.0}) {
    double prev = g_top(gamma, 1).value;
    for (int n = 2; n <= 24; ++n) {
      const double g = g_top(gamma, n).value;
      EXPECT_GT(g, prev);
      EXPECT_GT(g, 1.0);
      prev = g;
    }
  }
}

TEST(GTop, EigenvectorPositiveAndThetaDecreasing) {
  for (double gamma : {1.0, 2.0, 4.0}) {
    for (int n : {2, 8, 64}) {
      const EigenPair p = g_top(gamma, n);
      const ThetaSequence theta = ThetaSequence::from_xi(p.vector);
      for (std::size_t i = 0; i < theta.size(); ++i) {
        EXPECT_GT(theta.values[i], 0.0);
        if (i > 0) EXPECT_LE(theta.values[i], theta.values[i - 1] * (1.0 + 1e-12));
      }
    }
  }
}

TEST(RemarkConstant, TenDigits) {
  EXPECT_NEAR(std::sqrt(g_top(2.0, 256).value) / (2.0 * std::numbers::pi), 0.1827262477, 1e-9);
  EXPECT_NEAR(asymptotic_tc_constant(), 0.1827262477, 1e-9);
  // Stabilized beyond N = 200.
  EXPECT_NEAR(std::sqrt(g_top(2.0, 200).value) / (2.0 * std::numbers::pi), asymptotic_tc_constant(), 1e-9);
}

TEST(ExpectedGamma, Examples) {
  for (int n : {1, 5, 17}) EXPECT_NEAR(expected_gamma(2.0, 2.0, n), g_top(2.0, n).value, 1e-12);
  EXPECT_NEAR(expected_gamma(4.0, 2.0, 1), 1.0, 1e-15);
  const double a = expected_gamma(4.0, 2.0, 64);
  const double b = expected_gamma(4.0, 2.0, 128);
  EXPECT_GT(a, 0.0);
  EXPECT_NEAR(a, b, 1e-6 * b);
  EXPECT_NEAR(gamma_asymptotics(64).expected_g4, a, 1e-14);
}

TEST(Dirichlet, HandExamples) {
  const auto one = dirichlet_coefficients(ThetaSequence{{1.0}}, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], 1.0);
  const auto flat = dirichlet_coefficients(ThetaSequence{{1.0, 1.0}}, 2);
  EXPECT_EQ(flat, (std::vector<double>{1.0, 2.0, 1.0}));
  const auto step = dirichlet_coefficients(ThetaSequence{{1.0, 0.0}}, 2);
  EXPECT_EQ(step, (std::vector<double>{1.0, 0.0, 0.0}));
  EXPECT_THROW(dirichlet_coefficients(ThetaSequence{{1.0, 0.0}}, 3), InputError);
}

TEST(Dirichlet, CoefficientsMatchBucketedQuadraticForm) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 32;
    std::vector<double> t(static_cast<std::size_t>(n));
    for (double& x : t) x = u(rng);
    const auto c = dirichlet_coefficients(ThetaSequence{t}, n);
    const auto expected = oracle::dirichlet_buckets(t);
    ASSERT_EQ(c.size(), expected.size());
    for (std::size_t k = 0; k < c.size(); ++k) EXPECT_NEAR(c[k], expected[k], 1e-12) << "N=" << n << " k=" << k + 1;
    for (double gamma : {1.5, 2.0, 4.0})
      EXPECT_NEAR(dirichlet_series(c, gamma), hat_gamma_form(ThetaSequence{t}, gamma), 1e-12 * n);
  }
}

TEST(Dirichlet, NonnegativeForDecreasingSequences) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 32;
    std::vector<double> t(static_cast<std::size_t>(n));
    for (double& x : t) x = u(rng);
    std::sort(t.begin(), t.end(), std::greater<>());
    if (trial % 3 == 0) std::fill(t.begin() + n / 2, t.end(), 0.0);
    for (double c : dirichlet_coefficients(ThetaSequence{t}, n)) EXPECT_GE(c, 0.0);
  }
}

TEST(Dirichlet, CanBeNegativeWithoutMonotonicity) {
  // theta increasing: the shift products 2 (theta_{n-k} - theta_n) theta_n turn negative.
  const auto c = dirichlet_coefficients(ThetaSequence{{0.0, 1.0}}, 2);
  EXPECT_LT(c[0], 0.0);
}

TEST(ConstantSequenceBound, EqualityForConstantTheta) {
  // For theta constant the ratio <Theta, hat-G Theta>/<Theta, D Theta> is exactly the bound.
  for (int n : {1, 3, 9}) {
    ThetaSequence t{std::vector<double>(static_cast<std::size_t>(n), 1.0)};
    for (double gamma : {1.5, 2.0})
      EXPECT_NEAR(hat_gamma_form(t, gamma) / odd_weighted_norm(t), constant_sequence_ratio_bound(n, gamma), 1e-13);
  }
}
