#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/owens_t.hpp>
#include <gtest/gtest.h>

#include "trigroots/gaussian.hpp"

namespace trigroots {
namespace {

constexpr double kPi = std::numbers::pi;

// P(X <= h, Y >= h) = 2 T(h, sqrt((1 - rho)/(1 + rho))) for a centered pair.
double owens_orthant(double h, double rho) {
  return 2.0 * boost::math::owens_t(h, std::sqrt((1.0 - rho) / (1.0 + rho)));
}

TEST(SincCovariance, Examples) {
  EXPECT_EQ(sinc_covariance(0.0), 1.0);
  EXPECT_NEAR(sinc_covariance(kPi), 0.0, 1e-15);
  EXPECT_NEAR(sinc_covariance(0.01), std::sin(0.01) / 0.01, 1e-16);
  // Two-term expansion: the dropped x^4/120 term is 8.3e-11.
  EXPECT_NEAR(sinc_covariance(0.01), 1.0 - 1e-4 / 6.0, 1e-10);
}

TEST(SincCovariance, SeriesJoinsDirectFormula) {
  for (double x : {9.9e-5, 1.01e-4, -5e-5, 1e-8}) {
    const long double exact = std::sin(static_cast<long double>(x)) / x;
    EXPECT_NEAR(sinc_covariance(x), static_cast<double>(exact), 1e-16);
  }
}

TEST(SamplePair, PerfectCorrelationGivesEqualDraws) {
  RandomStream rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto [z0, z1] = sample_pair({0.4, 1.0}, rng);
    EXPECT_EQ(z0, z1);
  }
}

TEST(SamplePair, RejectsInvalidCorrelation) {
  RandomStream rng(3);
  EXPECT_THROW(sample_pair({0.0, 1.5}, rng), std::invalid_argument);
}

TEST(SamplePair, IndependentDrawsAreUncorrelated) {
  RandomStream rng(2024);
  constexpr int kDraws = 1000000;
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (int i = 0; i < kDraws; ++i) {
    const auto [x, y] = sample_pair({0.0, 0.0}, rng);
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  const double mx = sx / kDraws, my = sy / kDraws;
  const double corr = (sxy / kDraws - mx * my) /
                      std::sqrt((sxx / kDraws - mx * mx) * (syy / kDraws - my * my));
  EXPECT_LE(std::abs(corr), 0.004);
}

TEST(SamplePair, MeansFollowLevel) {
  RandomStream rng(77);
  constexpr int kDraws = 1000000;
  for (double rho : {-0.6, 0.3, 0.95}) {
    double s0 = 0.0, s1 = 0.0;
    for (int i = 0; i < kDraws; ++i) {
      const auto [z0, z1] = sample_pair({3.0, rho}, rng);
      s0 += z0;
      s1 += z1;
    }
    EXPECT_NEAR(s0 / kDraws, 3.0, 0.004);
    EXPECT_NEAR(s1 / kDraws, 3.0, 0.004);
  }
}

TEST(OrthantProbability, IndependentSigns) {
  EXPECT_NEAR(orthant_probability({0.0, 0.0}, 0.0), 0.25, 1e-12);
}

TEST(OrthantProbability, HalfCorrelationIsOneSixth) {
  EXPECT_NEAR(orthant_probability({0.0, 0.5}, 0.0), 1.0 / 6.0, 1e-12);
}

TEST(OrthantProbability, HalfCorrelationAgreesWithMonteCarlo) {
  RandomStream rng(0xFACE);
  constexpr int kDraws = 10000000;
  int hits = 0;
  for (int i = 0; i < kDraws; ++i) {
    const auto [x, y] = sample_pair({0.0, 0.5}, rng);
    if (x <= 0.0 && y >= 0.0) ++hits;
  }
  const double p = orthant_probability({0.0, 0.5}, 0.0);
  const double se = std::sqrt(p * (1 - p) / kDraws);
  EXPECT_LE(std::abs(static_cast<double>(hits) / kDraws - p), 4.0 * se);
}

TEST(OrthantProbability, NearUnitCorrelationMatchesAsymptote) {
  const double ratio = orthant_probability({0.0, 0.999}, 1.0) / orthant_asymptotic(1.0, 0.999);
  EXPECT_NEAR(ratio, 1.0, 0.02);
}

TEST(OrthantProbability, MatchesOwensT) {
  for (double rho : {-0.99, -0.7, -0.2, 0.0, 0.1, 0.5, 0.9, 0.99, 0.9999}) {
    for (double h : {-4.0, -1.5, -0.3, 0.0, 0.3, 1.0, 2.5, 6.0}) {
      EXPECT_NEAR(orthant_probability({0.0, rho}, h), owens_orthant(h, rho), 1e-10)
          << "rho=" << rho << " h=" << h;
    }
  }
}

TEST(OrthantProbability, MeanShiftsTheLevel) {
  EXPECT_NEAR(orthant_probability({1.0, 0.3}, 1.4), orthant_probability({0.0, 0.3}, 0.4), 1e-14);
}

TEST(OrthantProbability, DegenerateAndInvalidCorrelation) {
  EXPECT_THROW(orthant_probability({0.0, 1.0}, 0.0), DegenerateInput);
  EXPECT_THROW(orthant_probability({0.0, -1.0}, 0.0), DegenerateInput);
  EXPECT_THROW(orthant_probability({0.0, 1.01}, 0.0), std::invalid_argument);
}

TEST(SheppardSameSign, Examples) {
  EXPECT_DOUBLE_EQ(sheppard_same_sign(0.0), 0.25);
  EXPECT_DOUBLE_EQ(sheppard_same_sign(1.0), 0.5);
  EXPECT_NEAR(sheppard_same_sign(0.5), 1.0 / 3.0, 1e-15);
}

// P(X >= 0, Y >= 0) = 1/2 - P(X <= 0, Y >= 0).
TEST(SheppardSameSign, AgreesWithQuadratureAcrossCorrelations) {
  for (int i = 0; i < 100; ++i) {
    const double rho = -0.999 + 1.998 * (i + 0.5) / 100.0;
    const double from_orthant = 0.5 - orthant_probability({0.0, rho}, 0.0);
    EXPECT_NEAR(from_orthant, sheppard_same_sign(rho), 1e-8) << rho;
  }
}

TEST(OrthantAsymptotic, Examples) {
  EXPECT_EQ(orthant_asymptotic(0.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(orthant_asymptotic(0.0, 0.0), 1.0 / (2.0 * kPi));
  EXPECT_NEAR(orthant_asymptotic(2.0, 0.8), 0.6 / (2.0 * kPi) * std::exp(-2.0), 1e-16);
}

TEST(OrthantAsymptotic, RatioConvergesAsCorrelationApproachesOne) {
  for (double u : {0.0, 0.5, 1.0, 2.0}) {
    const auto ratio = [u](double rho) {
      return orthant_probability({0.0, rho}, u) / orthant_asymptotic(u, rho);
    };
    EXPECT_NEAR(ratio(0.999), 1.0, 0.02) << "u=" << u;
    EXPECT_NEAR(ratio(0.99999), 1.0, 0.005) << "u=" << u;
    EXPECT_LT(std::abs(ratio(0.99999) - 1.0), std::abs(ratio(0.99) - 1.0) + 1e-12);
  }
}

TEST(CrossingProbability, IndependentEndsAtPi) {
  EXPECT_NEAR(crossing_probability(0.0, kPi), 0.5, 1e-12);
}

TEST(CrossingProbability, SmallLagDensity) {
  EXPECT_NEAR(crossing_probability(0.0, 0.01) / (0.01 / (kPi * std::sqrt(3.0))), 1.0, 0.005);
  EXPECT_NEAR(crossing_probability(1.0, 0.01) / (0.01 * std::exp(-0.5) / (kPi * std::sqrt(3.0))),
              1.0, 0.01);
}

TEST(CrossingProbability, ConvergesToLimitingDensity) {
  for (double u : {0.0, 1.0}) {
    EXPECT_NEAR(crossing_probability(u, 0.01) / 0.01 / limiting_density(u), 1.0, 0.005);
  }
}

TEST(CrossingProbability, MatchesOwensT) {
  for (double delta : {1e-3, 0.05, 0.3, 1.0, 2.0}) {
    for (double u : {0.0, 0.7, 2.0}) {
      const double rho = std::sin(delta) / delta;
      EXPECT_NEAR(crossing_probability(u, delta), 2.0 * owens_orthant(-u, rho), 1e-10);
    }
  }
}

TEST(CrossingProbability, SymmetricInLevel) {
  for (double delta : {0.01, 0.2, 1.3}) {
    for (double u : {0.3, 1.0, 2.5}) {
      EXPECT_NEAR(crossing_probability(u, delta), crossing_probability(-u, delta), 1e-12);
    }
  }
}

TEST(CrossingProbability, RejectsZeroOrNegativeLag) {
  EXPECT_THROW(crossing_probability(0.0, 0.0), DegenerateInput);
  EXPECT_THROW(crossing_probability(0.0, -0.1), std::invalid_argument);
}

TEST(CrossingProbability, AgreesWithSampledPairs) {
  RandomStream rng(8);
  constexpr int kDraws = 1000000;
  for (auto [u, delta] : {std::pair{0.0, 0.3}, std::pair{1.0, 1.0}}) {
    int hits = 0;
    for (int i = 0; i < kDraws; ++i) {
      const auto [z0, z1] = sample_pair({u, sinc_covariance(delta)}, rng);
      if (z0 * z1 < 0.0) ++hits;
    }
    const double p = crossing_probability(u, delta);
    EXPECT_LE(std::abs(static_cast<double>(hits) / kDraws - p), 4.0 * std::sqrt(p * (1 - p) / kDraws));
  }
}

TEST(LimitingDensity, Examples) {
  EXPECT_NEAR(limiting_density(0.0), 0.183776, 1e-6);
  EXPECT_NEAR(limiting_density(1.0), limiting_density(0.0) * std::exp(-0.5), 1e-15);
  EXPECT_GT(limiting_density(2.0), limiting_density(3.0));
  EXPECT_EQ(limiting_density(40.0), 0.0);
}

TEST(LimitingChf, Examples) {
  EXPECT_EQ(limiting_chf(0.3, 0.5, 0.0, 0.0), std::complex<double>(1.0, 0.0));
  EXPECT_NEAR(std::abs(limiting_chf(0.0, kPi, 1.0, 1.0) - std::exp(-1.0)), 0.0, 1e-15);
  const std::complex<double> expected = std::exp(std::complex<double>(-0.5, 1.0));
  EXPECT_NEAR(std::abs(limiting_chf(1.0, 1.0, 1.0, 0.0) - expected), 0.0, 1e-15);
}

TEST(LimitingChf, MarginalModulus) {
  for (double lambda : {-3.0, -0.4, 0.0, 1.7, 5.0}) {
    EXPECT_NEAR(std::abs(limiting_chf(0.8, 0.25, lambda, 0.0)), std::exp(-0.5 * lambda * lambda),
                1e-15);
  }
}

TEST(RiceOracle, Examples) {
  EXPECT_DOUBLE_EQ(rice_oracle_gaussian(1, 0.0, 0.0, 2.0 * kPi), 2.0);
  EXPECT_NEAR(rice_oracle_gaussian(100000, 0.0, 0.0, 2.0 * kPi) / 100000, 2.0 / std::sqrt(3.0), 1e-4);
  EXPECT_NEAR(rice_oracle_gaussian(100, 1.0, 0.0, kPi),
              rice_oracle_gaussian(100, 0.0, 0.0, kPi) * std::exp(-0.5), 1e-12);
  EXPECT_THROW(rice_oracle_gaussian(3, 0.0, 1.0, 1.0), std::invalid_argument);
}

}  // namespace
}  // namespace trigroots
