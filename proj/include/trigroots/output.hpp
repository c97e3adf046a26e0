#pragma once

#include <string>

#include "trigroots/experiments.hpp"

namespace trigroots {

/// "%.17g": 17 significant digits, enough for every double to round-trip.
std::string format_real(double value);

// CSV: header row plus one row per n / delta / threshold / grid point.
// JSON: {"schema_version", "suite_version", "kind", "config", "rows", ...}.
std::string convergence_csv(const ExperimentResult& result);
std::string convergence_json(const ExperimentResult& result);
std::string gap_csv(const GapTable& table);
std::string gap_json(const GapTable& table);
std::string events_csv(const EventEstimate& estimate);
std::string events_json(const EventEstimate& estimate);
std::string small_ball_csv(const SmallBallTable& table);
std::string small_ball_json(const SmallBallTable& table);
std::string chf_csv(const ChfTable& table);
std::string chf_json(const ChfTable& table);

/// Writes `<prefix>.csv` and `<prefix>.json`; std::runtime_error on failure.
void write_result_files(const std::string& prefix, const std::string& csv,
                        const std::string& json);

}  // namespace trigroots
