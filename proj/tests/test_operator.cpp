#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "eliashberg/bounds.hpp"
#include "eliashberg/operator.hpp"
#include "oracles.hpp"

using namespace eliashberg;

namespace {
constexpr double kPi = std::numbers::pi;

SpectralMeasure einstein_at(double varpi, double t = 1.0) { return SpectralMeasure::einstein(2.0 * kPi * t * varpi); }

std::vector<double> varpi_grid(int points) {
  std::vector<double> v;
  for (int i = 0; i < points; ++i) v.push_back(0.05 * std::pow(400.0, double(i) / (points - 1)));
  return v;
}

double oracle_einstein_k(double varpi, int n) {
  return oracle::top_eigenvalue(oracle::eliashberg_matrix([varpi](int k) { return oracle::einstein_kernel(varpi, k); }, n));
}

std::vector<SpectralMeasure> non_dirac() {
  return {SpectralMeasure::discrete({{0.2, 0.3}, {0.5, 1.0}, {0.3, 2.0}}),
          SpectralMeasure::tabulated({{0.0, 0.0}, {1.0, 2.0}})};
}
}  // namespace

TEST(AssembleK, MatchesTermByTermDefinition) {
  for (const auto& m : non_dirac()) {
    const Temperature t{0.13};
    const int n = 9;
    const SymMatrix k = assemble_k(m, t, n).matrix;
    const oracle::Dense d = oracle::eliashberg_matrix([&](int q) { return m.kernel_average(q, t); }, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) EXPECT_NEAR(k(i, j), d[i][j], 1e-14);
  }
}

TEST(AssembleK, CouplingPartIsPositive) {
  const auto op = assemble_k(SpectralMeasure::einstein(1.0), Temperature{0.2}, 6);
  const SymMatrix c = op.coupling();
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) EXPECT_GT(c(i, j), 0.0);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(op.matrix(i, i) + op.k1_diagonal[i], c(i, i), 1e-15);
}

TEST(ClosedForm, EinsteinUnitVarpiReferenceValues) {
  const auto m = einstein_at(1.0);
  const Temperature t{1.0};
  EXPECT_NEAR(k_closed_form(m, t, 1).k_value, 0.5, 1e-15);
  EXPECT_NEAR(k_closed_form(m, t, 2).k_value, 0.668625, 2e-6);
  // By hand at varpi = 1: trace 1/5, determinant -47/150.
  EXPECT_NEAR(k_closed_form(m, t, 2).k_value, 0.5 * (0.2 + std::sqrt(0.04 + 4.0 * 47.0 / 150.0)), 1e-14);
  for (int n = 2; n <= 4; ++n) EXPECT_NEAR(k_closed_form(m, t, n).k_value, oracle_einstein_k(1.0, n), 1e-13);
  EXPECT_THROW(k_closed_form(m, t, 5), DomainError);
}

TEST(ClosedForm, MatchesOracleOverVarpiGrid) {
  for (double varpi : varpi_grid(20)) {
    const auto m = einstein_at(varpi);
    for (int n = 1; n <= 4; ++n) {
      const double closed = k_closed_form(m, Temperature{1.0}, n).k_value;
      const double expected = oracle_einstein_k(varpi, n);
      EXPECT_NEAR(closed, expected, 1e-10 * std::abs(expected)) << "varpi " << varpi << " N " << n;
      EXPECT_NEAR(k_numeric(m, Temperature{1.0}, n).k_value, expected, 1e-10 * std::abs(expected));
    }
  }
}

TEST(ClosedForm, MatchesEigensolverForNonDiracMeasures) {
  for (const auto& m : non_dirac()) {
    for (double varpi : varpi_grid(8)) {
      const Temperature t{m.support_bound() / (2.0 * kPi * varpi)};
      for (int n = 1; n <= 4; ++n) {
        const double a = k_closed_form(m, t, n).k_value;
        const double b = k_numeric(m, t, n).k_value;
        EXPECT_NEAR(a, b, 1e-10 * std::abs(b));
      }
    }
  }
}

TEST(ClosedForm, EigenvectorSolvesTheMatrix) {
  const auto m = non_dirac()[0];
  const Temperature t{0.1};
  for (int n = 2; n <= 4; ++n) {
    const KBound b = k_closed_form(m, t, n);
    const SymMatrix k = assemble_k(m, t, n).matrix;
    const std::vector<double> kv = k * b.eigvec;
    for (int i = 0; i < n; ++i) {
      EXPECT_NEAR(kv[i], b.k_value * b.eigvec[i], 1e-10);
      EXPECT_GT(b.eigvec[i], 0.0);
    }
    EXPECT_NEAR(b.lambda_upper, 1.0 / b.k_value, 1e-15);
  }
}

TEST(Lambda2, ReciprocalFormulaAndFloor) {
  EXPECT_NEAR(lambda2_closed(einstein_at(1.0), Temperature{1.0}), 1.0 / oracle_einstein_k(1.0, 2), 1e-13);
  EXPECT_NEAR(lambda2_closed(einstein_at(1.0), Temperature{1.0}), 1.49560873502468, 1e-12);
  for (double varpi : {0.1, 3.0, 40.0})
    EXPECT_NEAR(lambda2_closed(einstein_at(varpi), Temperature{1.0}), 1.0 / oracle_einstein_k(varpi, 2), 1e-12);
  EXPECT_EQ(k_limit_T0(2).lambda_n, 0.6);
}

TEST(LowTemperature, LimitValues) {
  EXPECT_EQ(k_limit_T0(1).k0, 1.0);
  EXPECT_NEAR(k_limit_T0(2).k0, 5.0 / 3.0, 1e-15);
  EXPECT_NEAR(k_limit_T0(3).k0, -1.0 + 2.0 * (1.0 + 1.0 / 3 + 1.0 / 5), 1e-15);
  for (const auto& m : {SpectralMeasure::einstein(1.0), SpectralMeasure::discrete({{0.5, 0.6}, {0.5, 1.4}})}) {
    const Temperature t{1e-4 * m.min_frequency()};
    for (int n : {1, 2, 3, 4, 8}) EXPECT_NEAR(k_value(m, t, n), k_limit_T0(n).k0, 1e-3);
  }
}

TEST(LowTemperature, ClosedFormStableNearZero) {
  const auto m = SpectralMeasure::einstein(1.0);
  for (double t : {1e-3, 1e-5, 1e-7, 1e-10})
    for (int n = 1; n <= 4; ++n)
      EXPECT_NEAR(k_closed_form(m, Temperature{t}, n).k_value, k_numeric(m, Temperature{t}, n).k_value, 1e-9);
}

TEST(HighTemperature, LeadingAndSecondOrder) {
  for (const auto& m : non_dirac()) {
    const Temperature t{100.0 * m.support_bound()};
    const double t2 = t.value * t.value;
    for (int n : {1, 4, 16}) {
      const double k = k_value(m, t, n);
      const GammaAsymptotics g = gamma_asymptotics(n);
      const double leading = g.g2 * m.moment(2) / (4.0 * kPi * kPi * t2);
      EXPECT_NEAR(k / leading, 1.0, 1e-5);
      const double second = -g.expected_g4 * m.moment(4) / (16.0 * std::pow(kPi, 4) * t2 * t2);
      EXPECT_NEAR((k - leading) / second, 1.0, 0.05);
    }
  }
}

TEST(Truncation, IncreasesWithN) {
  for (const auto& m : non_dirac()) {
    for (double t : {0.01, 0.1, 1.0}) {
      double prev = k_value(m, Temperature{t}, 1);
      for (int n = 2; n <= 40; ++n) {
        const double k = k_value(m, Temperature{t}, n);
        EXPECT_GT(k, prev);
        prev = k;
      }
    }
  }
}

TEST(Temperature, DecreasingAboveTStar) {
  for (const auto& m : non_dirac()) {
    const double ts = t_star(m);
    for (int n : {1, 3, 8}) {
      double prev = k_value(m, Temperature{ts}, n);
      for (int i = 1; i <= 10; ++i) {
        const double k = k_value(m, Temperature{ts * (1.0 + 0.3 * i)}, n);
        EXPECT_LT(k, prev);
        prev = k;
      }
    }
  }
}

TEST(Eigenvector, ThetaDecreasing) {
  for (const auto& m : non_dirac()) {
    for (double t : {0.005, 0.05, 0.5}) {
      for (int n : {4, 16, 64}) {
        const KBound b = k_numeric(m, Temperature{t}, n);
        const ThetaSequence theta = ThetaSequence::from_xi(b.eigvec);
        for (std::size_t i = 0; i < theta.size(); ++i) {
          EXPECT_GT(theta.values[i], 0.0);
          if (i > 0) EXPECT_LE(theta.values[i], theta.values[i - 1] * (1.0 + 1e-10));
        }
      }
    }
  }
}

TEST(FixedPoint, SpectralRadiusCrossesOneAtLambdaN) {
  const auto m = einstein_at(1.0);
  const Temperature t{1.0};
  for (int n : {4, 32}) {
    const double lambda = 1.0 / oracle::top_eigenvalue(
                                    oracle::eliashberg_matrix([](int k) { return oracle::einstein_kernel(1.0, k); }, n));
    EXPECT_NEAR(c_spectral_radius(m, t, lambda, n), 1.0, 1e-8);
    EXPECT_LT(c_spectral_radius(m, t, 0.9 * lambda, n), 1.0);
    EXPECT_GT(c_spectral_radius(m, t, 1.1 * lambda, n), 1.0);
  }
}

TEST(Derivative, IdentityAgainstIndependentDifference) {
  for (const auto& m : non_dirac()) {
    for (double t : {0.05, 0.2, 1.0}) {
      const DerivativeCheck d = dk_dT2_identity_check(m, Temperature{t});
      EXPECT_LT(d.closed_form, 0.0);
      EXPECT_LE(d.residual, 1e-6);
      auto combo = [&](double s) {
        const Temperature tt{std::sqrt(s)};
        return 3.0 * m.kernel_average(1, tt, 1e-13) + 2.0 * m.kernel_average(2, tt, 1e-13) -
               m.kernel_average(3, tt, 1e-13);
      };
      const double fd = oracle::derivative(combo, t * t, 1e-2 * t * t);
      EXPECT_NEAR(fd, d.closed_form, 1e-6 * std::abs(d.closed_form));
    }
  }
}

TEST(Operator, RejectsBadArguments) {
  const auto m = SpectralMeasure::einstein(1.0);
  EXPECT_THROW(assemble_k(m, Temperature{0.0}, 2), DomainError);
  EXPECT_THROW(assemble_k(m, Temperature{1.0}, 0), DomainError);
  EXPECT_THROW(c_spectral_radius(m, Temperature{1.0}, -1.0, 4), DomainError);
}
