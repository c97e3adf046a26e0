#pragma once

#include <complex>
#include <stdexcept>
#include <utility>

#include "trigroots/random.hpp"

namespace trigroots {

/// Raised when a formula is asked for at a degenerate parameter (|rho| = 1,
/// delta = 0) where its numerical route does not apply.
class DegenerateInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Unit-variance Gaussian pair with common mean u and correlation rho, the
/// law of (Z(0), Z(delta)) when rho = sinc(delta).
struct BivariatePair {
  double u = 0.0;
  double rho = 0.0;
};

/// sin(lag)/lag, with sinc(0) = 1 and a Taylor series for |lag| < 1e-4.
double sinc_covariance(double lag);

/// One draw of the pair: z0 = u + g1, z1 = u + rho g1 + sqrt(1 - rho^2) g2.
/// Throws std::invalid_argument for |rho| > 1.
std::pair<double, double> sample_pair(const BivariatePair& pair, RandomStream& rng);

/// P(X <= level, Y >= level) for (X, Y) distributed as `pair`.
///
/// Computed as a one-dimensional integral of the conditional upper tail of Y
/// given X against the density of X, after rescaling the variable by
/// sqrt(1 - rho^2) so the integrand stays resolved as rho approaches 1.
/// Adaptive Gauss-Kronrod panels; absolute error below 1e-10.
/// Throws DegenerateInput for |rho| = 1, std::invalid_argument for |rho| > 1.
double orthant_probability(const BivariatePair& pair, double level);

/// P(X >= 0, Y >= 0) = 1/4 + arcsin(rho)/(2 pi) for a centered pair.
double sheppard_same_sign(double rho);

/// sqrt(1 - rho^2)/(2 pi) exp(-u^2/2): the rho -> 1 asymptote of
/// P(X <= u, Y >= u) for a centered pair.
double orthant_asymptotic(double u, double rho);

/// P(Z(0) Z(delta) < 0) for the stationary Gaussian process with mean u,
/// unit variance and covariance sinc. Throws DegenerateInput for delta = 0.
double crossing_probability(double u, double delta);

/// exp(-u^2/2)/(pi sqrt 3): limit of E N_n[a, b] / (n (b - a)).
double limiting_density(double u);

/// E exp(i (lambda Z(0) + mu Z(delta))) for the limit process:
/// exp(i u (lambda + mu) - (lambda^2 + mu^2)/2 - lambda mu sinc(delta)).
std::complex<double> limiting_chf(double u, double delta, double lambda, double mu);

/// Exact E N_n[a, b] for Gaussian coefficients (Rice formula):
/// ((b - a)/pi) sqrt((1/n) sum k^2) exp(-u^2/2).
double rice_oracle_gaussian(int n, double u, double a, double b);

}  // namespace trigroots
