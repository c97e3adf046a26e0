#include "trigroots/roots.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/tools/toms748_solve.hpp>

namespace trigroots {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::int64_t kMaxLatticeCells = 200'000'000;

// Shrinks a sign-change bracket of f to width kRootBracketWidth; returns its midpoint.
template <typename F>
double refine_bracket(const F& f, double lo, double hi, double f_lo, double f_hi) {
  std::uintmax_t iterations = kMaxRefineIterations;
  const auto width_reached = [](double x, double y) { return std::abs(y - x) <= kRootBracketWidth; };
  const auto bracket = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, width_reached,
                                                         iterations);
  return 0.5 * (bracket.first + bracket.second);
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

void check_interval(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("interval must be finite");
  if (!(a < b)) throw std::invalid_argument("interval needs a < b");
}

}  // namespace

int sign_change_indicator(double xa, double xb) {
  if (std::isnan(xa) || std::isnan(xb)) throw std::invalid_argument("sign change of NaN");
  const int s = sign_of(xa) * sign_of(xb);
  return 1 - s;
}

LatticeSpec snap_interval(double a, double b, double delta, int n, SnapMode mode) {
  check_interval(a, b);
  if (a < 0.0 || b > kTwoPi) throw std::invalid_argument("interval must lie in [0, 2 pi]");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be positive");
  if (n < 1) throw std::invalid_argument("degree n must be at least 1");

  LatticeSpec lattice{a, b, delta, n, mode, 0, 0};
  const double scale = static_cast<double>(n) / delta;
  if (static_cast<double>(kMaxLatticeCells) < (b - a) * scale + 2.0) {
    throw std::invalid_argument("lattice too fine for the interval");
  }
  // The products a*n/delta are inexact, so each floor/ceil is corrected
  // against the node positions themselves.
  const auto largest_at_most = [&](double x) {
    auto k = static_cast<std::int64_t>(std::floor(x * scale));
    while (lattice.node(k + 1) <= x) ++k;
    while (lattice.node(k) > x) --k;
    return k;
  };
  const auto smallest_at_least = [&](double x) {
    auto k = static_cast<std::int64_t>(std::ceil(x * scale));
    while (lattice.node(k - 1) >= x) --k;
    while (lattice.node(k) < x) ++k;
    return k;
  };
  if (mode == SnapMode::outer) {
    lattice.first_index = largest_at_most(a);
    lattice.last_index = smallest_at_least(b);
  } else {
    lattice.first_index = smallest_at_least(a);
    lattice.last_index = largest_at_most(b);
    if (lattice.first_index >= lattice.last_index) {
      throw std::invalid_argument("no lattice cell fits inside the interval");
    }
  }
  return lattice;
}

RootTally count_lattice_sign_changes(const TrigPolySample& poly, const LatticeSpec& lattice) {
  const std::int64_t cells = lattice.cells();
  if (cells < 1 || cells > kMaxLatticeCells) throw std::invalid_argument("invalid lattice");
  std::vector<double> nodes(static_cast<std::size_t>(cells + 1));
  for (std::int64_t i = 0; i <= cells; ++i) nodes[i] = lattice.node(lattice.first_index + i);
  std::vector<double> values(nodes.size());
  DerivativeEvaluator(poly, 0).evaluate(nodes, values);

  RootTally tally;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    tally.half_units += sign_change_indicator(values[i], values[i + 1]);
  }
  return tally;
}

double default_root_tolerance(const TrigPolySample& poly, int derivative_order) {
  const double shift = derivative_order == 0 ? std::abs(poly.u()) : 0.0;
  const double spread = std::sqrt(theoretical_derivative_variance(poly.degree(), derivative_order));
  return 1e-10 * (1.0 + shift + 2.0 * spread);
}

int root_grid_nodes(int n, double a, double b, const RootCountOptions& options) {
  const double cells =
      std::ceil(options.oversample * (n + 1.0) * (b - a) / kTwoPi);
  if (!(cells < static_cast<double>(std::numeric_limits<int>::max() - 1))) {
    throw std::invalid_argument("root grid too large");
  }
  return std::max(static_cast<int>(cells) + 1, options.min_nodes);
}

RootTally count_roots(const TrigPolySample& poly, double a, double b,
                      const RootCountOptions& options) {
  if (options.oversample < 4) {
    throw std::invalid_argument("oversample below 4 cannot resolve every sign change");
  }
  if (options.min_nodes < 2) throw std::invalid_argument("root grid needs at least 2 nodes");
  check_interval(a, b);

  const int order = options.derivative_order;
  const DerivativeEvaluator f(poly, order);
  const DerivativeEvaluator slope(poly, order + 1);
  const double tolerance = options.root_tolerance > 0.0 ? options.root_tolerance
                                                        : default_root_tolerance(poly, order);

  const int count = root_grid_nodes(poly.degree(), a, b, options);
  const double h = (b - a) / (count - 1);
  std::vector<double> nodes(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) nodes[i] = a + h * i;
  nodes.back() = b;
  std::vector<double> values(nodes.size());
  std::vector<double> slopes(nodes.size());
  f.evaluate(nodes, values);
  slope.evaluate(nodes, slopes);

  RootTally tally;
  const auto add_interior = [&](double t) {
    tally.half_units += 2;
    tally.refined_roots.push_back({t, RootKind::interior});
  };
  const auto is_zero = [&](int i) { return std::abs(values[i]) <= tolerance; };

  // Roots strictly inside (lo, hi), given non-zero end values.
  const auto scan_cell = [&](double lo, double hi, double v_lo, double v_hi, double d_lo,
                             double d_hi) {
    const int s = sign_of(v_lo);
    if (s != sign_of(v_hi)) {
      add_interior(refine_bracket(f, lo, hi, v_lo, v_hi));
      return;
    }
    // Same sign at both ends: look for |X| dipping through zero and back.
    if (s * d_lo < 0.0 && s * d_hi > 0.0) {
      const double t_turn = refine_bracket(slope, lo, hi, d_lo, d_hi);
      const double v_turn = f(t_turn);
      if (s * v_turn < 0.0) {
        add_interior(refine_bracket(f, lo, t_turn, v_lo, v_turn));
        add_interior(refine_bracket(f, t_turn, hi, v_turn, v_hi));
      }
    }
  };

  // A zero node is counted once; the rest of an adjacent cell is scanned
  // from a probe just inside it. Zero nodes are not rare for +-1 coefficients.
  const double probe_offset = h / 1024.0;

  for (int i = 0; i < count; ++i) {
    if (is_zero(i)) {
      if (i == 0 || i == count - 1) {
        tally.half_units += options.half_weight_endpoints ? 1 : 2;
        tally.refined_roots.push_back({nodes[i], RootKind::endpoint});
      } else {
        add_interior(nodes[i]);
      }
    }
    if (i + 1 == count) continue;

    double lo = nodes[i];
    double hi = nodes[i + 1];
    double v_lo = values[i];
    double v_hi = values[i + 1];
    double d_lo = slopes[i];
    double d_hi = slopes[i + 1];
    if (is_zero(i)) {
      lo += probe_offset;
      v_lo = f(lo);
      d_lo = slope(lo);
      if (std::abs(v_lo) <= tolerance) continue;
    }
    if (is_zero(i + 1)) {
      hi -= probe_offset;
      v_hi = f(hi);
      d_hi = slope(hi);
      if (std::abs(v_hi) <= tolerance) continue;
    }
    scan_cell(lo, hi, v_lo, v_hi, d_lo, d_hi);
  }
  return tally;
}

RootTally count_roots(const TrigPolySample& poly, double a, double b, int oversample,
                      double root_tolerance) {
  RootCountOptions options;
  options.oversample = oversample;
  options.root_tolerance = root_tolerance;
  return count_roots(poly, a, b, options);
}

}  // namespace trigroots
