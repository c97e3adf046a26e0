#include "trigroots/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "trigroots/poly.hpp"

namespace trigroots {

namespace {

constexpr double kSeriesCutoff = 1e-4;
// Standard normal mass beyond this many standard deviations is below 1e-300.
constexpr double kTailCut = 37.0;

double normal_density(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double upper_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

// 1 - sin(x)/x without cancellation for small x.
double one_minus_sinc(double x) {
  const double x2 = x * x;
  if (std::abs(x) < 1e-2) {
    return x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
  }
  return 1.0 - std::sin(x) / x;
}

// P(X <= h, Y >= h) for a centered pair with correlation rho, where
// spread = sqrt(1 - rho^2) is passed separately to keep its relative
// accuracy when rho rounds to 1.
//
// Substituting x = h - spread v in  int_{x <= h} phi(x) Q((h - rho x)/spread) dx
// gives  spread int_0^inf phi(h - spread v) Q(h sqrt((1-rho)/(1+rho)) + rho v) dv.
double centered_orthant(double h, double rho, double spread) {
  if (h < -kTailCut) return 0.0;
  const double offset = h * spread / (1.0 + rho);
  const auto integrand = [&](double v) {
    return normal_density(h - spread * v) * upper_tail(offset + rho * v);
  };

  // Beyond v_max one of the two factors is negligible.
  double v_max = (h + kTailCut) / spread;
  if (rho > 0.0) v_max = std::min(v_max, (kTailCut - offset) / rho);
  if (!(v_max > 0.0)) return 0.0;

  std::vector<double> breaks{0.0};
  for (double edge = 0.125; edge < v_max; edge *= 2.0) breaks.push_back(edge);
  const auto add_feature = [&](double v) {
    if (v > 0.0 && v < v_max) breaks.push_back(v);
  };
  add_feature(h / spread);                     // peak of the density factor
  if (rho != 0.0) add_feature(-offset / rho);  // tail factor passes 1/2
  breaks.push_back(v_max);
  std::sort(breaks.begin(), breaks.end());

  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] <= breaks[i]) continue;
    total += Rule::integrate(integrand, breaks[i], breaks[i + 1], 20, 1e-13);
  }
  return spread * total;
}

void check_correlation(double rho) {
  if (!(std::abs(rho) <= 1.0)) throw std::invalid_argument("correlation must lie in [-1, 1]");
}

}  // namespace

double sinc_covariance(double lag) {
  if (std::abs(lag) < kSeriesCutoff) {
    const double x2 = lag * lag;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(lag) / lag;
}

std::pair<double, double> sample_pair(const BivariatePair& pair, RandomStream& rng) {
  check_correlation(pair.rho);
  const double g1 = rng.normal();
  const double g2 = rng.normal();
  const double spread = std::sqrt((1.0 - pair.rho) * (1.0 + pair.rho));
  return {pair.u + g1, pair.u + pair.rho * g1 + spread * g2};
}

double orthant_probability(const BivariatePair& pair, double level) {
  check_correlation(pair.rho);
  if (std::abs(pair.rho) == 1.0) {
    throw DegenerateInput("orthant probability at |rho| = 1; use orthant_asymptotic");
  }
  const double spread = std::sqrt((1.0 - pair.rho) * (1.0 + pair.rho));
  return centered_orthant(level - pair.u, pair.rho, spread);
}

double sheppard_same_sign(double rho) {
  check_correlation(rho);
  return 0.25 + std::asin(rho) / (2.0 * std::numbers::pi);
}

double orthant_asymptotic(double u, double rho) {
  check_correlation(rho);
  return std::sqrt((1.0 - rho) * (1.0 + rho)) / (2.0 * std::numbers::pi) * std::exp(-0.5 * u * u);
}

double crossing_probability(double u, double delta) {
  if (delta == 0.0) throw DegenerateInput("crossing probability at delta = 0");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be positive");
  const double gap = one_minus_sinc(delta);  // 1 - rho
  const double rho = 1.0 - gap;
  const double spread = std::sqrt(gap * (2.0 - gap));
  // Z(0) Z(delta) < 0 splits into two exchangeable orthants of the centered pair at level -u.
  return 2.0 * centered_orthant(-u, rho, spread);
}

double limiting_density(double u) {
  return std::exp(-0.5 * u * u) / (std::numbers::pi * std::numbers::sqrt3);
}

std::complex<double> limiting_chf(double u, double delta, double lambda, double mu) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  const double real = -0.5 * (lambda * lambda + mu * mu) - lambda * mu * sinc_covariance(delta);
  return std::exp(std::complex<double>(real, u * (lambda + mu)));
}

double rice_oracle_gaussian(int n, double u, double a, double b) {
  if (!(b > a)) throw std::invalid_argument("interval needs a < b");
  const double spectral_moment = theoretical_derivative_variance(n, 1);
  return (b - a) / std::numbers::pi * std::sqrt(spectral_moment) * std::exp(-0.5 * u * u);
}

}  // namespace trigroots
