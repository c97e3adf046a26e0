#include "trigroots/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "trigroots/experiments.hpp"
#include "trigroots/gaussian.hpp"
#include "trigroots/output.hpp"
#include "trigroots/roots.hpp"

namespace trigroots {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Raised for flag combinations CLI11 cannot check by itself.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string fixed(double value, int digits = 10) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
  return buffer;
}

std::string join(const std::vector<int>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + std::to_string(values[i]);
  return s;
}

std::string join(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + format_real(values[i]);
  return s;
}

int resolve_threads(int flag_value) {
  if (const char* env = std::getenv("TRIGROOTS_THREADS"); env != nullptr && *env != '\0') {
    try {
      const int parsed = std::stoi(env);
      if (parsed >= 1) return parsed;
    } catch (const std::exception&) {
    }
    throw UsageError("TRIGROOTS_THREADS must be a positive integer");
  }
  return flag_value;
}

struct Common {
  std::string family = "gaussian";
  double u = 0.0;
  std::uint64_t seed = 20240601;
  int threads = 1;
  std::int64_t trials = 2000;
  std::string out;
};

void add_family(CLI::App* cmd, Common& c) {
  cmd->add_option("--family", c.family, "Coefficient law")
      ->check(CLI::IsMember({"gaussian", "rademacher", "uniform"}))
      ->capture_default_str();
  cmd->add_option("--u", c.u, "Vertical shift u")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Master seed")->capture_default_str();
}

void add_run(CLI::App* cmd, Common& c, const std::string& default_out) {
  c.out = default_out;
  cmd->add_option("--trials", c.trials, "Monte Carlo trials")->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker threads (TRIGROOTS_THREADS overrides)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--out", c.out, "Output prefix for <out>.csv and <out>.json (empty: none)")
      ->capture_default_str();
}

void write_if_requested(const std::string& prefix, const std::string& csv, const std::string& json,
                        std::ostream& out) {
  if (prefix.empty()) return;
  write_result_files(prefix, csv, json);
  out << "wrote " << prefix << ".csv " << prefix << ".json\n";
}

struct CountArgs {
  Common common;
  int n = 0;
  double a = 0.0;
  double b = kTwoPi;
  int oversample = kDefaultOversample;
};

void run_count(const CountArgs& args, std::ostream& out, std::ostream& err) {
  if (!(args.a < args.b)) throw UsageError("--b must be greater than --a");
  if (args.a < 0.0 || args.b > kTwoPi) throw UsageError("interval must lie in [0, 2 pi]");
  const auto start = std::chrono::steady_clock::now();
  const CoefficientSpec spec{parse_family(args.common.family)};
  // Same sample as trial 0 of `converge` at this n and seed.
  RandomStream rng = trial_stream(args.common.seed, kStreamConvergence, args.n, 0);
  const TrigPolySample poly = sample_polynomial(spec, args.common.u, args.n, rng);
  const RootTally tally = count_roots(poly, args.a, args.b, args.oversample);

  out << "config family=" << args.common.family << " n=" << args.n
      << " u=" << format_real(args.common.u) << " a=" << format_real(args.a)
      << " b=" << format_real(args.b) << " seed=" << args.common.seed
      << " oversample=" << args.oversample << "\n";
  out << "half_units " << tally.half_units << "\n";
  out << "roots " << fixed(tally.count()) << "\n";
  for (const LocatedRoot& root : tally.refined_roots) {
    out << "root " << format_real(root.t) << " "
        << (root.kind == RootKind::interior ? "interior" : "endpoint") << "\n";
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  err << "runtime_seconds " << fixed(elapsed.count(), 4) << "\n";
}

struct ConvergeArgs {
  Common common;
  std::vector<int> n_values{50, 100, 200, 400};
  double a = 0.0;
  double b = kTwoPi;
  double delta = 0.25;
  int oversample = kDefaultOversample;
};

void run_converge(const ConvergeArgs& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentConfig config;
  config.family = CoefficientSpec{parse_family(args.common.family)};
  config.u = args.common.u;
  config.n_values = args.n_values;
  config.a = args.a;
  config.b = args.b;
  config.delta = args.delta;
  config.trials = args.common.trials;
  config.master_seed = args.common.seed;
  config.threads = resolve_threads(args.common.threads);
  config.oversample = args.oversample;
  config.output_path = args.common.out;
  config.validate();

  out << "config family=" << args.common.family << " u=" << format_real(config.u)
      << " n_values=" << join(config.n_values) << " a=" << format_real(config.a)
      << " b=" << format_real(config.b) << " delta=" << format_real(config.delta)
      << " trials=" << config.trials << " seed=" << config.master_seed
      << " threads=" << config.threads << " oversample=" << config.oversample << "\n";
  const ExperimentResult result = run_convergence(config);
  out << "n mean_roots_per_n stderr mean_lattice_per_n rice_exact_per_n limit\n";
  for (const ConvergenceRow& row : result.rows) {
    out << row.n << " " << fixed(row.roots_per_n.mean) << " "
        << (row.roots_per_n.stderr_value ? fixed(*row.roots_per_n.stderr_value) : "NA") << " "
        << fixed(row.lattice_per_n.mean) << " "
        << (row.rice_exact_per_n ? fixed(*row.rice_exact_per_n) : "NA") << " "
        << fixed(row.limit) << "\n";
  }
  const ConvergenceRow& last = result.rows.back();
  out << "final n=" << last.n << " mean_roots_per_n=" << fixed(last.roots_per_n.mean)
      << " limit=" << fixed(last.limit)
      << " relative_error=" << fixed((last.roots_per_n.mean - last.limit) / last.limit, 6) << "\n";
  if (!config.output_path.empty()) {
    out << "wrote " << config.output_path << ".csv " << config.output_path << ".json\n";
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  err << "runtime_seconds " << fixed(elapsed.count(), 4) << "\n";
}

struct GapArgs {
  Common common;
  int n = 500;
  std::vector<double> deltas{0.4, 0.2, 0.1, 0.05};
};

void run_gap(const GapArgs& args, std::ostream& out, std::ostream&) {
  const GapTable table =
      run_gap_experiment(CoefficientSpec{parse_family(args.common.family)}, args.common.u, args.n,
                         args.deltas, args.common.trials, args.common.seed,
                         resolve_threads(args.common.threads));
  out << "config family=" << args.common.family << " u=" << format_real(args.common.u)
      << " n=" << args.n << " delta_list=" << join(args.deltas)
      << " trials=" << args.common.trials << " seed=" << args.common.seed << "\n";
  out << "delta cube_root_delta gap_per_n stderr negative_trials\n";
  for (const GapRow& row : table.rows) {
    out << fixed(row.delta) << " " << fixed(row.cube_root_delta) << " "
        << fixed(row.gap_per_n.mean) << " "
        << (row.gap_per_n.stderr_value ? fixed(*row.gap_per_n.stderr_value) : "NA") << " "
        << row.negative_trials << "\n";
  }
  write_if_requested(args.common.out, gap_csv(table), gap_json(table), out);
}

struct EventArgs {
  Common common;
  int n = 500;
  double delta = 0.1;
  int j = 0;
  int m = 1;
};

void run_events(const EventArgs& args, std::ostream& out, std::ostream&) {
  const EventEstimate e = estimate_event_probability(
      CoefficientSpec{parse_family(args.common.family)}, args.common.u, args.n, args.delta, args.j,
      args.m, args.common.trials, args.common.seed, resolve_threads(args.common.threads));
  out << "config family=" << args.common.family << " u=" << format_real(args.common.u)
      << " n=" << args.n << " delta=" << format_real(args.delta) << " j=" << args.j
      << " m=" << args.m << " trials=" << args.common.trials << " seed=" << args.common.seed
      << "\n";
  out << "probability " << fixed(e.probability.estimate) << " ci95 [" << fixed(e.probability.ci_low)
      << ", " << fixed(e.probability.ci_high) << "] successes " << e.probability.successes << "\n";
  if (e.resolution_limited) {
    out << "resolution_limited: m exceeds the " << e.detectable_roots
        << " roots the window grid can resolve\n";
  }
  write_if_requested(args.common.out, events_csv(e), events_json(e), out);
}

struct SmallBallArgs {
  Common common;
  int n = 500;
  int j = 0;
  std::vector<double> thresholds{0.01, 0.03, 0.1, 0.3, 1.0};
};

void run_small_ball(const SmallBallArgs& args, std::ostream& out, std::ostream&) {
  const SmallBallTable table = estimate_small_ball(
      CoefficientSpec{parse_family(args.common.family)}, args.common.u, args.n, args.j,
      args.thresholds, args.common.trials, args.common.seed, resolve_threads(args.common.threads));
  out << "config family=" << args.common.family << " u=" << format_real(args.common.u)
      << " n=" << args.n << " j=" << args.j << " T_list=" << join(args.thresholds)
      << " trials=" << args.common.trials << " seed=" << args.common.seed << "\n";
  out << "T probability ci95_low ci95_high envelope within_envelope\n";
  for (const SmallBallRow& row : table.rows) {
    out << fixed(row.threshold) << " " << fixed(row.probability.estimate) << " "
        << fixed(row.probability.ci_low) << " " << fixed(row.probability.ci_high) << " "
        << fixed(row.envelope) << " " << (row.within_envelope ? "yes" : "no") << "\n";
  }
  write_if_requested(args.common.out, small_ball_csv(table), small_ball_json(table), out);
}

struct ChfArgs {
  Common common;
  int n = 500;
  double delta = 0.5;
  double grid_max = 3.0;
  double grid_step = 0.5;
};

void run_chf(const ChfArgs& args, std::ostream& out, std::ostream&) {
  const ChfTable table = run_chf_comparison(
      CoefficientSpec{parse_family(args.common.family)}, args.common.u, args.n, args.delta,
      args.common.trials, chf_grid(args.grid_max, args.grid_step), args.common.seed,
      resolve_threads(args.common.threads));
  out << "config family=" << args.common.family << " u=" << format_real(args.common.u)
      << " n=" << args.n << " delta=" << format_real(args.delta)
      << " grid_max=" << format_real(args.grid_max) << " grid_step=" << format_real(args.grid_step)
      << " trials=" << args.common.trials << " seed=" << args.common.seed << "\n";
  out << "alpha " << fixed(table.alpha) << " beta " << fixed(table.beta) << "\n";
  out << "sup_deviation " << fixed(table.sup_deviation) << " noise_floor "
      << fixed(4.0 / std::sqrt(static_cast<double>(table.trials))) << "\n";
  write_if_requested(args.common.out, chf_csv(table), chf_json(table), out);
}

struct GaussianArgs {
  double u = 0.0;
  std::vector<double> deltas;
  std::vector<double> rhos;
};

void run_gaussian(const GaussianArgs& args, std::ostream& out, std::ostream&) {
  if (args.deltas.empty() && args.rhos.empty()) {
    throw UsageError("give --delta-list and/or --rho-list");
  }
  for (const double d : args.deltas) {
    if (!(d > 0.0)) throw UsageError("every delta must be positive");
  }
  for (const double r : args.rhos) {
    if (!(std::abs(r) < 1.0)) throw UsageError("every rho must lie in (-1, 1)");
  }
  out << "config u=" << format_real(args.u) << " delta_list=" << join(args.deltas)
      << " rho_list=" << join(args.rhos) << "\n";
  if (!args.deltas.empty()) {
    const double density = limiting_density(args.u);
    out << "delta crossing_probability per_delta limiting_density ratio\n";
    for (const double d : args.deltas) {
      const double p = crossing_probability(args.u, d);
      out << fixed(d) << " " << fixed(p) << " " << fixed(p / d) << " " << fixed(density) << " "
          << fixed(p / d / density) << "\n";
    }
  }
  if (!args.rhos.empty()) {
    out << "rho sheppard orthant_same_sign orthant_at_u asymptotic asymptotic_ratio\n";
    for (const double r : args.rhos) {
      const double same_sign = 0.5 - orthant_probability({0.0, r}, 0.0);
      const double at_u = orthant_probability({0.0, r}, args.u);
      const double asymptote = orthant_asymptotic(args.u, r);
      out << fixed(r) << " " << fixed(sheppard_same_sign(r)) << " " << fixed(same_sign) << " "
          << fixed(at_u) << " " << fixed(asymptote) << " " << fixed(at_u / asymptote) << "\n";
    }
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random trigonometric polynomial root-count experiments", "trigroots"};
  app.set_config("--config", "", "INI file with one [section] per subcommand");
  app.require_subcommand(1);

  CountArgs count;
  auto* count_cmd = app.add_subcommand("count", "Count the roots of one seeded sample");
  add_family(count_cmd, count.common);
  count_cmd->add_option("--n", count.n, "Degree")->required()->check(CLI::PositiveNumber);
  count_cmd->add_option("--a", count.a, "Interval start")->capture_default_str();
  count_cmd->add_option("--b", count.b, "Interval end")->capture_default_str();
  count_cmd->add_option("--oversample", count.oversample, "Grid nodes per unit frequency")
      ->check(CLI::Range(4, 1 << 20))
      ->capture_default_str();

  ConvergeArgs converge;
  auto* converge_cmd = app.add_subcommand("converge", "Mean root count per n against the limit");
  add_family(converge_cmd, converge.common);
  add_run(converge_cmd, converge.common, "converge");
  converge_cmd->add_option("--n-values", converge.n_values, "Increasing degrees")
      ->delimiter(',')
      ->capture_default_str();
  converge_cmd->add_option("--a", converge.a, "Interval start")->capture_default_str();
  converge_cmd->add_option("--b", converge.b, "Interval end")->capture_default_str();
  converge_cmd->add_option("--delta", converge.delta, "Lattice spacing times n")
      ->capture_default_str();
  converge_cmd->add_option("--oversample", converge.oversample, "Grid nodes per unit frequency")
      ->check(CLI::Range(4, 1 << 20))
      ->capture_default_str();

  GapArgs gap;
  auto* gap_cmd = app.add_subcommand("gap", "Roots minus lattice sign changes versus delta");
  add_family(gap_cmd, gap.common);
  add_run(gap_cmd, gap.common, "gap");
  gap_cmd->add_option("--n", gap.n, "Degree")->check(CLI::PositiveNumber)->capture_default_str();
  gap_cmd->add_option("--delta-list", gap.deltas, "Deltas in (0, 1/2)")
      ->delimiter(',')
      ->capture_default_str();

  EventArgs events;
  auto* events_cmd = app.add_subcommand("events", "P(j-th derivative has >= m roots in a window)");
  add_family(events_cmd, events.common);
  add_run(events_cmd, events.common, "events");
  events_cmd->add_option("--n", events.n, "Degree")->check(CLI::PositiveNumber)
      ->capture_default_str();
  events_cmd->add_option("--delta", events.delta, "Window length times n")->capture_default_str();
  events_cmd->add_option("--j", events.j, "Derivative order")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  events_cmd->add_option("--m", events.m, "Minimum number of roots")->check(CLI::PositiveNumber)
      ->capture_default_str();

  SmallBallArgs small_ball;
  auto* small_ball_cmd = app.add_subcommand("smallball", "P(|X^(j)(1)/n^j| <= T)");
  add_family(small_ball_cmd, small_ball.common);
  add_run(small_ball_cmd, small_ball.common, "smallball");
  small_ball_cmd->add_option("--n", small_ball.n, "Degree")->check(CLI::PositiveNumber)
      ->capture_default_str();
  small_ball_cmd->add_option("--j", small_ball.j, "Derivative order")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  small_ball_cmd->add_option("--T-list", small_ball.thresholds, "Positive thresholds")
      ->delimiter(',')
      ->capture_default_str();

  ChfArgs chf;
  auto* chf_cmd = app.add_subcommand("chf", "Empirical versus limiting characteristic function");
  add_family(chf_cmd, chf.common);
  add_run(chf_cmd, chf.common, "chf");
  chf_cmd->add_option("--n", chf.n, "Degree")->check(CLI::PositiveNumber)->capture_default_str();
  chf_cmd->add_option("--delta", chf.delta, "Point separation times n")->capture_default_str();
  chf_cmd->add_option("--grid-max", chf.grid_max, "Largest |lambda|, |mu|")->capture_default_str();
  chf_cmd->add_option("--grid-step", chf.grid_step, "Grid spacing")->capture_default_str();

  GaussianArgs gaussian;
  auto* gaussian_cmd = app.add_subcommand("gaussian", "Gaussian comparison formulas");
  gaussian_cmd->add_option("--u", gaussian.u, "Level u")->capture_default_str();
  gaussian_cmd->add_option("--delta-list", gaussian.deltas, "Crossing-probability lags")
      ->delimiter(',');
  gaussian_cmd->add_option("--rho-list", gaussian.rhos, "Correlations for orthant checks")
      ->delimiter(',');

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (count_cmd->parsed()) run_count(count, out, err);
    else if (converge_cmd->parsed()) run_converge(converge, out, err);
    else if (gap_cmd->parsed()) run_gap(gap, out, err);
    else if (events_cmd->parsed()) run_events(events, out, err);
    else if (small_ball_cmd->parsed()) run_small_ball(small_ball, out, err);
    else if (chf_cmd->parsed()) run_chf(chf, out, err);
    else if (gaussian_cmd->parsed()) run_gaussian(gaussian, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const DegenerateInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace trigroots
