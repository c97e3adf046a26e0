#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trigroots/poly.hpp"

namespace trigroots {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kSuiteVersion = "1.0.0";

/// Trials per reduction chunk. Chunk sums are combined in chunk order, so
/// floating-point aggregates do not depend on the thread count.
inline constexpr std::int64_t kTrialChunk = 256;

// Substream tags: the per-trial seed is substream_seed(master, tag ^ n, trial).
inline constexpr std::uint64_t kStreamConvergence = 0x436f6e7600000000ULL;
inline constexpr std::uint64_t kStreamGap = 0x4761700000000000ULL;
inline constexpr std::uint64_t kStreamEvents = 0x4576656e00000000ULL;
inline constexpr std::uint64_t kStreamSmallBall = 0x536d616c00000000ULL;
inline constexpr std::uint64_t kStreamChf = 0x4368660000000000ULL;

/// Seeded stream for trial `trial` of an experiment at degree n.
RandomStream trial_stream(std::uint64_t master_seed, std::uint64_t tag, int n, std::int64_t trial);

struct ExperimentConfig {
  CoefficientSpec family;
  double u = 0.0;
  std::vector<int> n_values{50, 100, 200, 400};
  double a = 0.0;
  double b = 2.0 * std::numbers::pi;
  /// Lattice spacing in units of 1/n (mesh = delta / n).
  double delta = 0.25;
  std::int64_t trials = 2000;
  std::uint64_t master_seed = 20240601;
  int threads = 1;
  int oversample = 16;
  /// Output prefix; `<prefix>.csv` and `<prefix>.json` are written when non-empty.
  std::string output_path;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

/// Mean and standard error of a per-trial statistic. stderr is absent for a
/// single trial.
struct Estimate {
  double mean = 0.0;
  std::optional<double> stderr_value;

  double ci_low() const { return mean - 1.96 * stderr_value.value_or(0.0); }
  double ci_high() const { return mean + 1.96 * stderr_value.value_or(0.0); }
};

struct ConvergenceRow {
  int n = 0;
  Estimate roots_per_n;    ///< N_n[a, b] / n
  Estimate lattice_per_n;  ///< N*_{n,delta}[a_n, b_n] / n
  std::optional<double> rice_exact_per_n;
  double limit = 0.0;
  std::int64_t total_root_half_units = 0;
  std::int64_t total_lattice_half_units = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ConvergenceRow> rows;
};

/// Mean of N_n[a, b]/n and of the lattice sign-change count per n, for each n.
/// Deterministic in config.master_seed for any config.threads. Writes the
/// CSV/JSON pair when config.output_path is set (std::runtime_error on I/O
/// failure).
ExperimentResult run_convergence(const ExperimentConfig& config);

struct GapRow {
  double delta = 0.0;
  double cube_root_delta = 0.0;
  Estimate gap_per_n;  ///< (N_n - N*_{n,delta}) / n on [a_n, b_n]
  Estimate roots_per_n;
  Estimate lattice_per_n;
  /// Trials with a negative per-sample gap (sandwich violations).
  std::int64_t negative_trials = 0;
};

struct GapTable {
  CoefficientSpec family;
  double u = 0.0;
  int n = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<GapRow> rows;
};

/// Roots-minus-sign-changes gap over [0, 2 pi] for each delta. Every delta
/// reuses the same samples. Throws std::invalid_argument for delta outside (0, 1/2).
GapTable run_gap_experiment(CoefficientSpec family, double u, int n,
                            const std::vector<double>& delta_values, std::int64_t trials,
                            std::uint64_t seed, int threads = 1);

struct ProportionEstimate {
  std::int64_t successes = 0;
  std::int64_t trials = 0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

/// Wilson score interval at 95%.
ProportionEstimate wilson_interval(std::int64_t successes, std::int64_t trials);

struct EventEstimate {
  CoefficientSpec family;
  double u = 0.0;
  int n = 0;
  double delta = 0.0;
  int derivative_order = 0;
  int min_roots = 1;
  std::uint64_t seed = 0;
  ProportionEstimate probability;
  /// Largest root count the per-interval grid can resolve.
  int detectable_roots = 0;
  bool resolution_limited = false;
};

/// Nodes used on each [alpha, alpha + delta/n] window by estimate_event_probability.
inline constexpr int kEventWindowNodes = 5;

/// P(X_n^{(j)} has at least m roots in [alpha, alpha + delta/n]) with alpha
/// uniform on [0, 2 pi - delta/n]; boundary roots carry full weight.
EventEstimate estimate_event_probability(CoefficientSpec family, double u, int n, double delta,
                                         int j, int m, std::int64_t trials, std::uint64_t seed,
                                         int threads = 1);

struct SmallBallRow {
  double threshold = 0.0;
  ProportionEstimate probability;
  double envelope = 0.0;  ///< 5 (T + T^{-1/2} n^{-(2j+1)/4})
  bool within_envelope = true;
};

struct SmallBallTable {
  CoefficientSpec family;
  double u = 0.0;
  int n = 0;
  int derivative_order = 0;
  double point = 1.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<SmallBallRow> rows;
};

/// P(|X_n^{(j)}(1) / n^j| <= T) for each T. Throws std::invalid_argument for T <= 0.
SmallBallTable estimate_small_ball(CoefficientSpec family, double u, int n, int j,
                                   const std::vector<double>& thresholds, std::int64_t trials,
                                   std::uint64_t seed, int threads = 1);

struct ChfPoint {
  double lambda = 0.0;
  double mu = 0.0;
  std::complex<double> empirical;
  std::complex<double> limit;
  double deviation = 0.0;
};

struct ChfTable {
  CoefficientSpec family;
  double u = 0.0;
  int n = 0;
  double delta = 0.0;
  double alpha = 0.0;  ///< lattice point nearest 1.0
  double beta = 0.0;   ///< alpha + delta/n
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<ChfPoint> points;
  double sup_deviation = 0.0;
};

/// Square grid {-max, -max+step, ..., max}^2.
std::vector<std::pair<double, double>> chf_grid(double max_abs, double step);

/// Empirical characteristic function of (X_n(alpha), X_n(beta)) against the
/// limiting one on the given (lambda, mu) points.
ChfTable run_chf_comparison(CoefficientSpec family, double u, int n, double delta,
                            std::int64_t trials,
                            const std::vector<std::pair<double, double>>& grid,
                            std::uint64_t seed, int threads = 1);

}  // namespace trigroots
