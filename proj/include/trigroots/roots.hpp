#pragma once

#include <cstdint>
#include <vector>

#include "trigroots/poly.hpp"

namespace trigroots {

enum class RootKind { interior, endpoint };

struct LocatedRoot {
  double t = 0.0;
  RootKind kind = RootKind::interior;
};

/// Root or sign-change count stored in half-units (twice the count), so a
/// root sitting on an interval endpoint keeps its exact weight 1/2.
///
/// For tallies from count_roots: half_units == 2 * interior + endpoint and
/// refined_roots is strictly increasing. Lattice tallies carry no locations.
struct RootTally {
  std::int64_t half_units = 0;
  std::vector<LocatedRoot> refined_roots;

  double count() const noexcept { return 0.5 * static_cast<double>(half_units); }
};

/// Half-units of 1/2 - sgn(xa * xb)/2: 0, 1 or 2.
/// Throws std::invalid_argument on NaN.
int sign_change_indicator(double xa, double xb);

enum class SnapMode {
  outer,  ///< a_n = floor, b_n = ceil: the lattice interval contains [a, b]
  inner,  ///< a'_n = ceil, b'_n = floor: the lattice interval lies inside [a, b]
};

/// Interval [a, b] together with the lattice (delta/n) Z snapped onto it.
/// Lattice nodes are first_index * mesh() .. last_index * mesh().
struct LatticeSpec {
  double a = 0.0;
  double b = 0.0;
  double delta = 0.0;
  int n = 1;
  SnapMode mode = SnapMode::outer;
  std::int64_t first_index = 0;
  std::int64_t last_index = 0;

  double mesh() const noexcept { return delta / n; }
  double node(std::int64_t k) const noexcept { return static_cast<double>(k) * delta / n; }
  double snapped_a() const noexcept { return node(first_index); }
  double snapped_b() const noexcept { return node(last_index); }
  std::int64_t cells() const noexcept { return last_index - first_index; }
};

/// Throws std::invalid_argument unless 0 <= a < b <= 2 pi, delta > 0, n >= 1.
/// Inner snapping additionally needs at least one lattice cell inside [a, b].
LatticeSpec snap_interval(double a, double b, double delta, int n,
                          SnapMode mode = SnapMode::outer);

/// N*_{n,delta}: sum of sign_change_indicator over consecutive lattice nodes.
RootTally count_lattice_sign_changes(const TrigPolySample& poly, const LatticeSpec& lattice);

inline constexpr int kDefaultOversample = 16;
inline constexpr double kRootBracketWidth = 1e-13;
inline constexpr int kMaxRefineIterations = 60;

/// 1e-10 * (1 + |u| + 2 sqrt(Var X^{(j)})), the |u| term for j = 0 only
/// (where the variance is 1).
double default_root_tolerance(const TrigPolySample& poly, int derivative_order = 0);

struct RootCountOptions {
  int oversample = kDefaultOversample;
  /// Non-positive selects default_root_tolerance.
  double root_tolerance = 0.0;
  /// Count roots of X_n^{(j)} instead of X_n.
  int derivative_order = 0;
  /// true: endpoint roots weigh 1/2 (one half-unit). false: full weight.
  bool half_weight_endpoints = true;
  /// Lower bound on the number of grid nodes.
  int min_nodes = 2;
};

/// Real roots of X_n^{(j)} on [a, b] (any finite a < b; X_n is 2 pi-periodic).
///
/// Scans ceil(oversample (n+1)(b-a)/(2 pi)) + 1 uniform nodes. A node with
/// |value| <= root_tolerance is a root at the node (weight 1/2 at a or b).
/// Each cell with a strict sign change holds one root. A cell without one
/// is still checked for a pair of crossings: if |X| decreases into the cell
/// and increases out of it, the extremum is bracketed through X^{(j+1)} and
/// two roots are counted when it lies on the other side of zero. A cell next
/// to a zero node is scanned the same way from h/1024 past that node. Every
/// root is refined to a bracket of width kRootBracketWidth.
///
/// Throws std::invalid_argument for oversample < 4 or b <= a.
RootTally count_roots(const TrigPolySample& poly, double a, double b,
                      const RootCountOptions& options);
RootTally count_roots(const TrigPolySample& poly, double a, double b,
                      int oversample = kDefaultOversample, double root_tolerance = 0.0);

/// Number of grid nodes count_roots uses for [a, b].
int root_grid_nodes(int n, double a, double b, const RootCountOptions& options);

}  // namespace trigroots
