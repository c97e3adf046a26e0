#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trigroots {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out`; diagnostics, usage text and timings go to `err`.
///
/// Subcommands: count, converge, gap, events, smallball, chf, gaussian.
/// `--config FILE` (before the subcommand) reads INI sections named after
/// subcommands; flags on the command line win. TRIGROOTS_THREADS, when set,
/// overrides --threads.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trigroots
