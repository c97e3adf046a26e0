#include "trigroots/experiments.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "parallel.hpp"
#include "trigroots/gaussian.hpp"
#include "trigroots/output.hpp"
#include "trigroots/roots.hpp"

namespace trigroots {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

__extension__ using Int128 = __int128;

// Exact running sums of an integer per-trial statistic.
struct IntegerMoments {
  std::int64_t sum = 0;
  Int128 sum_squares = 0;

  void add(std::int64_t x) {
    sum += x;
    sum_squares += static_cast<Int128>(x) * x;
  }
  void merge(const IntegerMoments& other) {
    sum += other.sum;
    sum_squares += other.sum_squares;
  }
  // Statistic = scale * x.
  Estimate estimate(std::int64_t trials, double scale) const {
    Estimate e;
    e.mean = scale * static_cast<double>(sum) / static_cast<double>(trials);
    if (trials > 1) {
      const Int128 t = trials;
      const Int128 centered = t * sum_squares - static_cast<Int128>(sum) * sum;
      const double variance = static_cast<double>(centered) /
                              (static_cast<double>(trials) * static_cast<double>(trials - 1));
      e.stderr_value = std::abs(scale) * std::sqrt(variance / static_cast<double>(trials));
    }
    return e;
  }
};

void check_common(int n, std::int64_t trials) {
  if (n < 1) throw std::invalid_argument("degree n must be at least 1");
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
}

}  // namespace

RandomStream trial_stream(std::uint64_t master_seed, std::uint64_t tag, int n, std::int64_t trial) {
  return RandomStream(substream_seed(master_seed, tag ^ static_cast<std::uint64_t>(n),
                                     static_cast<std::uint64_t>(trial)));
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (n_values.empty()) throw std::invalid_argument("n_values must not be empty");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 1) throw std::invalid_argument("every n must be at least 1");
    if (i > 0 && n_values[i] <= n_values[i - 1]) {
      throw std::invalid_argument("n_values must be strictly increasing");
    }
  }
  if (!(0.0 <= a && a < b && b <= kTwoPi)) {
    throw std::invalid_argument("interval must satisfy 0 <= a < b <= 2 pi");
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be positive");
  if (!std::isfinite(u)) throw std::invalid_argument("u must be finite");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  if (oversample < 4) throw std::invalid_argument("oversample must be at least 4");
}

ExperimentResult run_convergence(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result{config, {}};

  struct Chunk {
    IntegerMoments roots;
    IntegerMoments lattice;
  };

  for (const int n : config.n_values) {
    const LatticeSpec lattice = snap_interval(config.a, config.b, config.delta, n);
    const auto chunks = detail::map_chunks<Chunk>(
        config.trials, kTrialChunk, config.threads, [&](std::int64_t begin, std::int64_t end) {
          Chunk chunk;
          for (std::int64_t trial = begin; trial < end; ++trial) {
            RandomStream rng = trial_stream(config.master_seed, kStreamConvergence, n, trial);
            const TrigPolySample poly = sample_polynomial(config.family, config.u, n, rng);
            chunk.roots.add(count_roots(poly, config.a, config.b, config.oversample).half_units);
            chunk.lattice.add(count_lattice_sign_changes(poly, lattice).half_units);
          }
          return chunk;
        });
    Chunk total;
    for (const Chunk& c : chunks) {
      total.roots.merge(c.roots);
      total.lattice.merge(c.lattice);
    }

    ConvergenceRow row;
    row.n = n;
    const double per_n = 0.5 / n;  // half-units -> roots per n
    row.roots_per_n = total.roots.estimate(config.trials, per_n);
    row.lattice_per_n = total.lattice.estimate(config.trials, per_n);
    if (config.family.family == CoefficientFamily::gaussian) {
      row.rice_exact_per_n = rice_oracle_gaussian(n, config.u, config.a, config.b) / n;
    }
    row.limit = limiting_density(config.u) * (config.b - config.a);
    row.total_root_half_units = total.roots.sum;
    row.total_lattice_half_units = total.lattice.sum;
    result.rows.push_back(row);
  }

  if (!config.output_path.empty()) {
    write_result_files(config.output_path, convergence_csv(result), convergence_json(result));
  }
  return result;
}

GapTable run_gap_experiment(CoefficientSpec family, double u, int n,
                            const std::vector<double>& delta_values, std::int64_t trials,
                            std::uint64_t seed, int threads) {
  check_common(n, trials);
  if (delta_values.empty()) throw std::invalid_argument("delta list must not be empty");
  std::vector<LatticeSpec> lattices;
  for (const double delta : delta_values) {
    if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("delta must lie in (0, 1/2)");
    lattices.push_back(snap_interval(0.0, kTwoPi, delta, n));
  }

  struct Chunk {
    std::vector<IntegerMoments> gap;
    std::vector<IntegerMoments> roots;
    std::vector<IntegerMoments> lattice;
    std::vector<std::int64_t> negative;
  };
  const std::size_t deltas = lattices.size();
  const auto chunks = detail::map_chunks<Chunk>(
      trials, kTrialChunk, threads, [&](std::int64_t begin, std::int64_t end) {
        Chunk chunk{std::vector<IntegerMoments>(deltas), std::vector<IntegerMoments>(deltas),
                    std::vector<IntegerMoments>(deltas), std::vector<std::int64_t>(deltas, 0)};
        for (std::int64_t trial = begin; trial < end; ++trial) {
          RandomStream rng = trial_stream(seed, kStreamGap, n, trial);
          const TrigPolySample poly = sample_polynomial(family, u, n, rng);
          for (std::size_t d = 0; d < deltas; ++d) {
            const LatticeSpec& lattice = lattices[d];
            const std::int64_t roots =
                count_roots(poly, lattice.snapped_a(), lattice.snapped_b()).half_units;
            const std::int64_t changes = count_lattice_sign_changes(poly, lattice).half_units;
            chunk.gap[d].add(roots - changes);
            chunk.roots[d].add(roots);
            chunk.lattice[d].add(changes);
            if (roots < changes) ++chunk.negative[d];
          }
        }
        return chunk;
      });

  GapTable table{family, u, n, trials, seed, {}};
  for (std::size_t d = 0; d < deltas; ++d) {
    IntegerMoments gap;
    IntegerMoments roots;
    IntegerMoments lattice;
    std::int64_t negative = 0;
    for (const Chunk& c : chunks) {
      gap.merge(c.gap[d]);
      roots.merge(c.roots[d]);
      lattice.merge(c.lattice[d]);
      negative += c.negative[d];
    }
    const double per_n = 0.5 / n;
    GapRow row;
    row.delta = delta_values[d];
    row.cube_root_delta = std::cbrt(row.delta);
    row.gap_per_n = gap.estimate(trials, per_n);
    row.roots_per_n = roots.estimate(trials, per_n);
    row.lattice_per_n = lattice.estimate(trials, per_n);
    row.negative_trials = negative;
    table.rows.push_back(row);
  }
  return table;
}

ProportionEstimate wilson_interval(std::int64_t successes, std::int64_t trials) {
  if (trials < 1 || successes < 0 || successes > trials) {
    throw std::invalid_argument("need 0 <= successes <= trials and trials >= 1");
  }
  constexpr double z = 1.959963984540054;
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / t;
  const double denom = 1.0 + z * z / t;
  const double center = (p + z * z / (2.0 * t)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / t + z * z / (4.0 * t * t));
  // The bounds are exactly 0 and 1 at the extremes; avoid rounding residue there.
  const double low = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double high = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {successes, trials, p, low, high};
}

EventEstimate estimate_event_probability(CoefficientSpec family, double u, int n, double delta,
                                         int j, int m, std::int64_t trials, std::uint64_t seed,
                                         int threads) {
  check_common(n, trials);
  if (j < 0) throw std::invalid_argument("derivative order must be non-negative");
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  const double width = delta / n;
  if (!(width < kTwoPi)) throw std::invalid_argument("delta/n must be shorter than 2 pi");

  RootCountOptions options;
  options.derivative_order = j;
  options.half_weight_endpoints = false;
  options.min_nodes = kEventWindowNodes;
  const int nodes = root_grid_nodes(n, 0.0, width, options);

  EventEstimate out;
  out.family = family;
  out.u = u;
  out.n = n;
  out.delta = delta;
  out.derivative_order = j;
  out.min_roots = m;
  out.seed = seed;
  // Each cell resolves at most two roots (a crossing pair).
  out.detectable_roots = 2 * (nodes - 1);
  out.resolution_limited = m > out.detectable_roots;

  const auto chunks = detail::map_chunks<std::int64_t>(
      trials, kTrialChunk, threads, [&](std::int64_t begin, std::int64_t end) {
        std::int64_t hits = 0;
        for (std::int64_t trial = begin; trial < end; ++trial) {
          RandomStream rng = trial_stream(seed, kStreamEvents, n, trial);
          const TrigPolySample poly = sample_polynomial(family, u, n, rng);
          const double alpha = rng.uniform(0.0, kTwoPi - width);
          const RootTally tally = count_roots(poly, alpha, alpha + width, options);
          if (tally.half_units >= 2 * static_cast<std::int64_t>(m)) ++hits;
        }
        return hits;
      });
  std::int64_t hits = 0;
  for (const std::int64_t h : chunks) hits += h;
  out.probability = wilson_interval(hits, trials);
  return out;
}

SmallBallTable estimate_small_ball(CoefficientSpec family, double u, int n, int j,
                                   const std::vector<double>& thresholds, std::int64_t trials,
                                   std::uint64_t seed, int threads) {
  check_common(n, trials);
  if (j < 0) throw std::invalid_argument("derivative order must be non-negative");
  if (thresholds.empty()) throw std::invalid_argument("threshold list must not be empty");
  for (const double t : thresholds) {
    if (!(t > 0.0)) throw std::invalid_argument("thresholds must be positive");
  }
  constexpr double kPoint = 1.0;
  const double normalizer = std::pow(static_cast<double>(n), j);

  const auto chunks = detail::map_chunks<std::vector<std::int64_t>>(
      trials, kTrialChunk, threads, [&](std::int64_t begin, std::int64_t end) {
        std::vector<std::int64_t> hits(thresholds.size(), 0);
        for (std::int64_t trial = begin; trial < end; ++trial) {
          RandomStream rng = trial_stream(seed, kStreamSmallBall, n, trial);
          const TrigPolySample poly = sample_polynomial(family, u, n, rng);
          const double value = std::abs(evaluate_derivative(poly, j, kPoint) / normalizer);
          for (std::size_t i = 0; i < thresholds.size(); ++i) {
            if (value <= thresholds[i]) ++hits[i];
          }
        }
        return hits;
      });

  SmallBallTable table{family, u, n, j, kPoint, trials, seed, {}};
  const double decay = std::pow(static_cast<double>(n), -(2.0 * j + 1.0) / 4.0);
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    std::int64_t hits = 0;
    for (const auto& c : chunks) hits += c[i];
    SmallBallRow row;
    row.threshold = thresholds[i];
    row.probability = wilson_interval(hits, trials);
    row.envelope = 5.0 * (row.threshold + decay / std::sqrt(row.threshold));
    row.within_envelope = row.probability.estimate <= row.envelope;
    table.rows.push_back(row);
  }
  return table;
}

std::vector<std::pair<double, double>> chf_grid(double max_abs, double step) {
  if (!(max_abs >= 0.0) || !(step > 0.0)) throw std::invalid_argument("invalid CHF grid");
  const auto steps = static_cast<int>(std::floor(max_abs / step + 1e-9));
  std::vector<std::pair<double, double>> grid;
  for (int i = -steps; i <= steps; ++i) {
    for (int k = -steps; k <= steps; ++k) grid.emplace_back(i * step, k * step);
  }
  return grid;
}

ChfTable run_chf_comparison(CoefficientSpec family, double u, int n, double delta,
                            std::int64_t trials,
                            const std::vector<std::pair<double, double>>& grid,
                            std::uint64_t seed, int threads) {
  check_common(n, trials);
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (grid.empty()) throw std::invalid_argument("CHF grid must not be empty");

  ChfTable table{family, u, n, delta, 0.0, 0.0, trials, seed, {}, 0.0};
  const double k = std::round(static_cast<double>(n) / delta);
  table.alpha = k * delta / n;
  table.beta = (k + 1.0) * delta / n;
  const std::array<double, 2> nodes{table.alpha, table.beta};

  using Sums = std::vector<std::complex<double>>;
  const auto chunks = detail::map_chunks<Sums>(
      trials, kTrialChunk, threads, [&](std::int64_t begin, std::int64_t end) {
        Sums sums(grid.size());
        std::array<double, 2> values{};
        for (std::int64_t trial = begin; trial < end; ++trial) {
          RandomStream rng = trial_stream(seed, kStreamChf, n, trial);
          const TrigPolySample poly = sample_polynomial(family, u, n, rng);
          DerivativeEvaluator(poly, 0).evaluate(nodes, values);
          for (std::size_t g = 0; g < grid.size(); ++g) {
            const double phase = grid[g].first * values[0] + grid[g].second * values[1];
            sums[g] += std::complex<double>(std::cos(phase), std::sin(phase));
          }
        }
        return sums;
      });

  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::complex<double> total;
    for (const Sums& c : chunks) total += c[g];
    ChfPoint point;
    point.lambda = grid[g].first;
    point.mu = grid[g].second;
    point.empirical = total / static_cast<double>(trials);
    point.limit = limiting_chf(u, delta, point.lambda, point.mu);
    point.deviation = std::abs(point.empirical - point.limit);
    table.sup_deviation = std::max(table.sup_deviation, point.deviation);
    table.points.push_back(point);
  }
  return table;
}

}  // namespace trigroots
