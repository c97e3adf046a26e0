#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trigroots/random.hpp"

namespace trigroots {

enum class CoefficientFamily { gaussian, rademacher, uniform };

/// Law of the coefficients A_k, B_k. Every family has mean 0 and variance 1;
/// `uniform` is the uniform law on [-sqrt(3), sqrt(3)].
struct CoefficientSpec {
  CoefficientFamily family = CoefficientFamily::gaussian;
};

std::string_view to_string(CoefficientFamily family);
/// Throws std::invalid_argument for an unknown name.
CoefficientFamily parse_family(std::string_view name);

/// One realization u + n^{-1/2} sum_{k=1}^n (A_k cos kt + B_k sin kt).
class TrigPolySample {
 public:
  /// Throws std::invalid_argument if A and B differ in length, are empty,
  /// or contain non-finite values.
  TrigPolySample(double u, std::vector<double> a, std::vector<double> b);

  double u() const noexcept { return u_; }
  int degree() const noexcept { return static_cast<int>(a_.size()); }
  std::span<const double> cos_coefficients() const noexcept { return a_; }
  std::span<const double> sin_coefficients() const noexcept { return b_; }

 private:
  double u_;
  std::vector<double> a_;
  std::vector<double> b_;
};

struct CoefficientDraw {
  std::vector<double> a;
  std::vector<double> b;
};

/// Draws A_1..A_n then B_1..B_n from `rng`. Throws std::invalid_argument for n < 1.
CoefficientDraw sample_coefficients(const CoefficientSpec& spec, int n, RandomStream& rng);

/// Convenience: sample_coefficients wrapped into a TrigPolySample with shift u.
TrigPolySample sample_polynomial(const CoefficientSpec& spec, double u, int n, RandomStream& rng);

/// Evaluates one fixed derivative order of a sample, holding the k^j-weighted
/// coefficients so repeated calls (root refinement) do not reallocate.
class DerivativeEvaluator {
 public:
  /// Throws std::invalid_argument for order < 0.
  DerivativeEvaluator(const TrigPolySample& poly, int order);

  int order() const noexcept { return order_; }
  double operator()(double t) const;
  /// `values` must have the same length as `nodes`.
  void evaluate(std::span<const double> nodes, std::span<double> values) const;

 private:
  int order_;
  double shift_;
  double scale_;
  std::vector<double> a_;
  std::vector<double> b_;
};

/// X_n(t), by Horner's rule on the unit circle (two trig calls per point).
double evaluate(const TrigPolySample& poly, double t);

/// X_n^{(j)}(t). For j = 0 this equals evaluate(poly, t).
///
/// With c_k = A_k - i B_k and z = e^{it},
///   X_n^{(j)}(t) - u [j = 0] = n^{-1/2} Re(i^j sum_k k^j c_k z^k),
/// which expands to the usual even/odd case split:
///   j even: (-1)^{j/2}     n^{-1/2} sum k^j (A_k cos kt + B_k sin kt)
///   j odd:  (-1)^{(j-1)/2} n^{-1/2} sum k^j (B_k cos kt - A_k sin kt)
/// Throws std::invalid_argument for j < 0.
double evaluate_derivative(const TrigPolySample& poly, int j, double t);

struct GridEvaluation {
  double t0 = 0.0;
  double step = 0.0;
  int count = 0;
  std::vector<double> values;

  double node(int i) const noexcept { return t0 + static_cast<double>(i) * step; }
};

/// X_n^{(j)} at the nodes t0 + i*step, i = 0..count-1.
///
/// Node phases e^{i t_i} are computed directly per node and the Horner sweep
/// runs over blocks of nodes at once. Results agree with the pointwise
/// evaluator to rounding. Throws std::invalid_argument for step <= 0,
/// count < 1, or a non-finite last node.
GridEvaluation evaluate_on_grid(const TrigPolySample& poly, double t0, double step, int count);
GridEvaluation evaluate_derivative_on_grid(const TrigPolySample& poly, int j, double t0,
                                           double step, int count);

/// X_n^{(j)} at arbitrary nodes (used for grids whose last node is pinned).
std::vector<double> evaluate_derivative_at(const TrigPolySample& poly, int j,
                                           std::span<const double> nodes);

/// Var X_n^{(j)}(t) = (1/n) sum_{k=1}^n k^{2j}.
double theoretical_derivative_variance(int n, int j);

}  // namespace trigroots
