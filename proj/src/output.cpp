#include "trigroots/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace trigroots {

namespace {

using nlohmann::json;

json header(const char* kind) {
  return json{{"schema_version", kSchemaVersion}, {"suite_version", kSuiteVersion}, {"kind", kind}};
}

json optional_real(const std::optional<double>& value) {
  return value ? json(*value) : json(nullptr);
}

std::string csv_optional(const std::optional<double>& value) {
  return value ? format_real(*value) : std::string("NA");
}

json estimate_json(const Estimate& e) {
  json out{{"mean", e.mean}, {"stderr", optional_real(e.stderr_value)}};
  if (e.stderr_value) {
    out["ci95"] = {e.ci_low(), e.ci_high()};
  } else {
    out["ci95"] = nullptr;
  }
  return out;
}

json proportion_json(const ProportionEstimate& p) {
  return json{{"successes", p.successes}, {"trials", p.trials}, {"estimate", p.estimate},
              {"ci95", {p.ci_low, p.ci_high}}};
}

// Joins already formatted cells with commas and terminates the row.
class CsvWriter {
 public:
  template <typename... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cells, first = false), ...);
    out_ << '\n';
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string convergence_csv(const ExperimentResult& result) {
  CsvWriter csv;
  csv.row("n", "mean_roots_per_n", "stderr", "ci95_low", "ci95_high", "mean_lattice_per_n",
          "stderr_lattice", "rice_exact_per_n", "limit");
  for (const ConvergenceRow& r : result.rows) {
    const bool has_stderr = r.roots_per_n.stderr_value.has_value();
    csv.row(r.n, format_real(r.roots_per_n.mean), csv_optional(r.roots_per_n.stderr_value),
            has_stderr ? format_real(r.roots_per_n.ci_low()) : "NA",
            has_stderr ? format_real(r.roots_per_n.ci_high()) : "NA",
            format_real(r.lattice_per_n.mean), csv_optional(r.lattice_per_n.stderr_value),
            csv_optional(r.rice_exact_per_n), format_real(r.limit));
  }
  return csv.str();
}

std::string convergence_json(const ExperimentResult& result) {
  const ExperimentConfig& c = result.config;
  json doc = header("convergence");
  doc["config"] = {{"family", to_string(c.family.family)},
                   {"u", c.u},
                   {"n_values", c.n_values},
                   {"interval", {c.a, c.b}},
                   {"delta", c.delta},
                   {"trials", c.trials},
                   {"master_seed", c.master_seed},
                   {"threads", c.threads},
                   {"oversample", c.oversample},
                   {"output_path", c.output_path}};
  json rows = json::array();
  for (const ConvergenceRow& r : result.rows) {
    rows.push_back({{"n", r.n},
                    {"roots_per_n", estimate_json(r.roots_per_n)},
                    {"lattice_per_n", estimate_json(r.lattice_per_n)},
                    {"rice_exact_per_n", optional_real(r.rice_exact_per_n)},
                    {"limit", r.limit},
                    {"total_root_half_units", r.total_root_half_units},
                    {"total_lattice_half_units", r.total_lattice_half_units}});
  }
  doc["rows"] = rows;
  return dump(doc);
}

std::string gap_csv(const GapTable& table) {
  CsvWriter csv;
  csv.row("delta", "cube_root_delta", "gap_per_n", "stderr_gap", "mean_roots_per_n",
          "mean_lattice_per_n", "negative_trials");
  for (const GapRow& r : table.rows) {
    csv.row(format_real(r.delta), format_real(r.cube_root_delta), format_real(r.gap_per_n.mean),
            csv_optional(r.gap_per_n.stderr_value), format_real(r.roots_per_n.mean),
            format_real(r.lattice_per_n.mean), r.negative_trials);
  }
  return csv.str();
}

std::string gap_json(const GapTable& table) {
  json doc = header("gap");
  doc["config"] = {{"family", to_string(table.family.family)}, {"u", table.u},
                   {"n", table.n}, {"interval", {0.0, 2.0 * std::numbers::pi}},
                   {"trials", table.trials}, {"master_seed", table.seed}};
  json rows = json::array();
  for (const GapRow& r : table.rows) {
    rows.push_back({{"delta", r.delta},
                    {"cube_root_delta", r.cube_root_delta},
                    {"gap_per_n", estimate_json(r.gap_per_n)},
                    {"roots_per_n", estimate_json(r.roots_per_n)},
                    {"lattice_per_n", estimate_json(r.lattice_per_n)},
                    {"negative_trials", r.negative_trials}});
  }
  doc["rows"] = rows;
  return dump(doc);
}

std::string events_csv(const EventEstimate& e) {
  CsvWriter csv;
  csv.row("delta", "j", "m", "successes", "trials", "estimate", "ci95_low", "ci95_high",
          "detectable_roots", "resolution_limited");
  csv.row(format_real(e.delta), e.derivative_order, e.min_roots, e.probability.successes,
          e.probability.trials, format_real(e.probability.estimate),
          format_real(e.probability.ci_low), format_real(e.probability.ci_high),
          e.detectable_roots, e.resolution_limited ? "true" : "false");
  return csv.str();
}

std::string events_json(const EventEstimate& e) {
  json doc = header("events");
  doc["config"] = {{"family", to_string(e.family.family)}, {"u", e.u},
                   {"n", e.n}, {"delta", e.delta},
                   {"j", e.derivative_order}, {"m", e.min_roots},
                   {"trials", e.probability.trials}, {"master_seed", e.seed}};
  doc["metadata"] = {{"interval_location", "alpha uniform on [0, 2 pi - delta/n]"},
                     {"boundary_roots", "full weight"},
                     {"window_nodes_min", kEventWindowNodes}};
  doc["rows"] = json::array({{{"probability", proportion_json(e.probability)},
                              {"detectable_roots", e.detectable_roots},
                              {"resolution_limited", e.resolution_limited}}});
  return dump(doc);
}

std::string small_ball_csv(const SmallBallTable& table) {
  CsvWriter csv;
  csv.row("T", "successes", "trials", "estimate", "ci95_low", "ci95_high", "envelope",
          "within_envelope");
  for (const SmallBallRow& r : table.rows) {
    csv.row(format_real(r.threshold), r.probability.successes, r.probability.trials,
            format_real(r.probability.estimate), format_real(r.probability.ci_low),
            format_real(r.probability.ci_high), format_real(r.envelope),
            r.within_envelope ? "true" : "false");
  }
  return csv.str();
}

std::string small_ball_json(const SmallBallTable& table) {
  json doc = header("smallball");
  doc["config"] = {{"family", to_string(table.family.family)}, {"u", table.u},
                   {"n", table.n}, {"j", table.derivative_order},
                   {"point", table.point}, {"trials", table.trials},
                   {"master_seed", table.seed}};
  json rows = json::array();
  for (const SmallBallRow& r : table.rows) {
    rows.push_back({{"T", r.threshold},
                    {"probability", proportion_json(r.probability)},
                    {"envelope", r.envelope},
                    {"within_envelope", r.within_envelope}});
  }
  doc["rows"] = rows;
  return dump(doc);
}

std::string chf_csv(const ChfTable& table) {
  CsvWriter csv;
  csv.row("lambda", "mu", "empirical_re", "empirical_im", "limit_re", "limit_im", "deviation");
  for (const ChfPoint& p : table.points) {
    csv.row(format_real(p.lambda), format_real(p.mu), format_real(p.empirical.real()),
            format_real(p.empirical.imag()), format_real(p.limit.real()),
            format_real(p.limit.imag()), format_real(p.deviation));
  }
  return csv.str();
}

std::string chf_json(const ChfTable& table) {
  json doc = header("chf");
  doc["config"] = {{"family", to_string(table.family.family)}, {"u", table.u},
                   {"n", table.n}, {"delta", table.delta},
                   {"alpha", table.alpha}, {"beta", table.beta},
                   {"trials", table.trials}, {"master_seed", table.seed}};
  json rows = json::array();
  for (const ChfPoint& p : table.points) {
    rows.push_back({{"lambda", p.lambda},
                    {"mu", p.mu},
                    {"empirical", {p.empirical.real(), p.empirical.imag()}},
                    {"limit", {p.limit.real(), p.limit.imag()}},
                    {"deviation", p.deviation}});
  }
  doc["rows"] = rows;
  doc["sup_deviation"] = table.sup_deviation;
  return dump(doc);
}

void write_result_files(const std::string& prefix, const std::string& csv,
                        const std::string& json_text) {
  const auto write = [](const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    file << text;
    file.flush();
    if (!file) throw std::runtime_error("failed writing '" + path + "'");
  };
  write(prefix + ".csv", csv);
  write(prefix + ".json", json_text);
}

}  // namespace trigroots
