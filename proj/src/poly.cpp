#include "trigroots/poly.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace trigroots {

namespace {

// Nodes per Horner sweep; the inner loop over a block vectorizes.
constexpr int kBlock = 32;

// Real part of i^j * p.
double rotate_real(int j, double re, double im) {
  switch (j % 4) {
    case 0: return re;
    case 1: return -im;
    case 2: return -re;
    default: return im;
  }
}

// sum_k (a_k - i b_k) z^k for `len` nodes z = (zr, zi); len <= kBlock.
void horner_block(std::span<const double> a, std::span<const double> b, const double* zr,
                  const double* zi, int len, double* out_re, double* out_im) {
  const int n = static_cast<int>(a.size());
  std::array<double, kBlock> pr{};
  std::array<double, kBlock> pi{};
  for (int i = 0; i < len; ++i) {
    pr[i] = a[n - 1];
    pi[i] = -b[n - 1];
  }
  for (int k = n - 2; k >= 0; --k) {
    const double ak = a[k];
    const double bk = b[k];
    for (int i = 0; i < len; ++i) {
      const double re = pr[i] * zr[i] - pi[i] * zi[i] + ak;
      const double im = pr[i] * zi[i] + pi[i] * zr[i] - bk;
      pr[i] = re;
      pi[i] = im;
    }
  }
  for (int i = 0; i < len; ++i) {
    out_re[i] = pr[i] * zr[i] - pi[i] * zi[i];
    out_im[i] = pr[i] * zi[i] + pi[i] * zr[i];
  }
}

void check_order(int j) {
  if (j < 0) throw std::invalid_argument("derivative order must be non-negative");
}

}  // namespace

DerivativeEvaluator::DerivativeEvaluator(const TrigPolySample& poly, int order)
    : order_(order),
      shift_(order == 0 ? poly.u() : 0.0),
      scale_(1.0 / std::sqrt(static_cast<double>(poly.degree()))),
      a_(poly.cos_coefficients().begin(), poly.cos_coefficients().end()),
      b_(poly.sin_coefficients().begin(), poly.sin_coefficients().end()) {
  check_order(order);
  for (std::size_t k = 1; k <= a_.size() && order > 0; ++k) {
    double weight = 1.0;
    for (int p = 0; p < order; ++p) weight *= static_cast<double>(k);
    a_[k - 1] *= weight;
    b_[k - 1] *= weight;
  }
}

double DerivativeEvaluator::operator()(double t) const {
  double value = 0.0;
  evaluate(std::span<const double>(&t, 1), std::span<double>(&value, 1));
  return value;
}

void DerivativeEvaluator::evaluate(std::span<const double> nodes, std::span<double> values) const {
  std::array<double, kBlock> zr{};
  std::array<double, kBlock> zi{};
  std::array<double, kBlock> re{};
  std::array<double, kBlock> im{};
  const auto total = static_cast<int>(nodes.size());
  for (int start = 0; start < total; start += kBlock) {
    const int len = std::min(kBlock, total - start);
    for (int i = 0; i < len; ++i) {
      zr[i] = std::cos(nodes[start + i]);
      zi[i] = std::sin(nodes[start + i]);
    }
    horner_block(a_, b_, zr.data(), zi.data(), len, re.data(), im.data());
    for (int i = 0; i < len; ++i) {
      values[start + i] = shift_ + scale_ * rotate_real(order_, re[i], im[i]);
    }
  }
}

std::string_view to_string(CoefficientFamily family) {
  switch (family) {
    case CoefficientFamily::gaussian: return "gaussian";
    case CoefficientFamily::rademacher: return "rademacher";
    case CoefficientFamily::uniform: return "uniform";
  }
  return "unknown";
}

CoefficientFamily parse_family(std::string_view name) {
  if (name == "gaussian") return CoefficientFamily::gaussian;
  if (name == "rademacher") return CoefficientFamily::rademacher;
  if (name == "uniform") return CoefficientFamily::uniform;
  throw std::invalid_argument("unknown coefficient family '" + std::string(name) + "'");
}

TrigPolySample::TrigPolySample(double u, std::vector<double> a, std::vector<double> b)
    : u_(u), a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty() || a_.size() != b_.size()) {
    throw std::invalid_argument("coefficient vectors must be non-empty and of equal length");
  }
  if (!std::isfinite(u_)) throw std::invalid_argument("shift u must be finite");
  for (std::size_t k = 0; k < a_.size(); ++k) {
    if (!std::isfinite(a_[k]) || !std::isfinite(b_[k])) {
      throw std::invalid_argument("coefficients must be finite");
    }
  }
}

CoefficientDraw sample_coefficients(const CoefficientSpec& spec, int n, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("degree n must be at least 1");
  CoefficientDraw draw;
  draw.a.resize(static_cast<std::size_t>(n));
  draw.b.resize(static_cast<std::size_t>(n));
  auto fill = [&](std::vector<double>& out) {
    switch (spec.family) {
      case CoefficientFamily::gaussian:
        for (double& x : out) x = rng.normal();
        break;
      case CoefficientFamily::rademacher:
        for (double& x : out) x = rng.sign();
        break;
      case CoefficientFamily::uniform:
        for (double& x : out) x = rng.uniform(-std::numbers::sqrt3, std::numbers::sqrt3);
        break;
    }
  };
  fill(draw.a);
  fill(draw.b);
  return draw;
}

TrigPolySample sample_polynomial(const CoefficientSpec& spec, double u, int n, RandomStream& rng) {
  CoefficientDraw draw = sample_coefficients(spec, n, rng);
  return TrigPolySample(u, std::move(draw.a), std::move(draw.b));
}

double evaluate(const TrigPolySample& poly, double t) { return evaluate_derivative(poly, 0, t); }

double evaluate_derivative(const TrigPolySample& poly, int j, double t) {
  return DerivativeEvaluator(poly, j)(t);
}

GridEvaluation evaluate_on_grid(const TrigPolySample& poly, double t0, double step, int count) {
  return evaluate_derivative_on_grid(poly, 0, t0, step, count);
}

GridEvaluation evaluate_derivative_on_grid(const TrigPolySample& poly, int j, double t0,
                                           double step, int count) {
  check_order(j);
  if (!(step > 0.0) || count < 1) {
    throw std::invalid_argument("grid needs step > 0 and count >= 1");
  }
  const double last = t0 + static_cast<double>(count - 1) * step;
  if (!std::isfinite(t0) || !std::isfinite(step) || !std::isfinite(last)) {
    throw std::invalid_argument("grid nodes overflow the representable range");
  }
  GridEvaluation grid{t0, step, count, {}};
  std::vector<double> nodes(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) nodes[i] = grid.node(i);
  grid.values.resize(nodes.size());
  DerivativeEvaluator(poly, j).evaluate(nodes, grid.values);
  return grid;
}

std::vector<double> evaluate_derivative_at(const TrigPolySample& poly, int j,
                                           std::span<const double> nodes) {
  std::vector<double> values(nodes.size());
  DerivativeEvaluator(poly, j).evaluate(nodes, values);
  return values;
}

double theoretical_derivative_variance(int n, int j) {
  if (n < 1) throw std::invalid_argument("degree n must be at least 1");
  check_order(j);
  double sum = 0.0;
  for (int k = 1; k <= n; ++k) {
    double term = 1.0;
    for (int p = 0; p < 2 * j; ++p) term *= k;
    sum += term;
  }
  return sum / n;
}

}  // namespace trigroots
