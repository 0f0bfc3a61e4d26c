#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "lcd/config.hpp"

namespace lcd {

enum class Command {
  ErrorCurve,
  OptimalTime,
  MonteCarlo,
  DumpDensity,
  ScanTime,
  Ruler,
  AmplitudeInfo,
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

const std::vector<Command> &all_commands();
std::string command_name(Command c);
std::optional<Command> command_from_name(std::string_view name);

/// First line of every artifact: "# lcd <command> <config.to_text()>".
std::string provenance_line(const RunConfig &config, Command command);

/// Writes the artifact of `command` to `out` and, for monte-carlo with
/// trial_csv set, the per-trial CSV to that path. Warnings go to `diag`.
/// Throws ConfigError, lcd::Error subclasses or std::runtime_error on I/O.
void write_artifact(const RunConfig &config, Command command, std::ostream &out,
                    std::ostream &diag);

/// write_artifact into config.output (or `out` when empty), mapping failures
/// to exit codes: 2 for configuration and parameter errors, 3 for numeric
/// failures, invalid state and resource limits.
int run_subcommand(const RunConfig &config, Command command, std::ostream &out,
                   std::ostream &diag);

} // namespace lcd
