#ifndef ACPB_CLI_HPP
#define ACPB_CLI_HPP

#include <map>
#include <optional>
#include <string>

#include "acpb/json_io.hpp"

namespace acpb::cli {

/// Exit codes shared by all subcommands.
enum ExitCode : int {
  kPass = 0,      // verdict passed
  kFail = 1,      // command ran, verdict failed / undecided
  kUsage = 2,     // flag or schema violation
  kNumeric = 3,   // runtime numeric failure
};

/// Flag overrides applied on top of scenario values.
struct Options {
  std::optional<std::uint64_t> seed;
  std::optional<int> points;
  std::optional<double> step;
  std::optional<double> tol;
};

struct CommandResult {
  int exit_code = kPass;
  Json report;
  /// Additional artifacts keyed by file name (CSV payloads).
  std::map<std::string, std::string> files;
};

CommandResult run_verify(const Json& scenario, const Options& opt);
CommandResult run_curvature(const Json& scenario, const Options& opt);
CommandResult run_geodesic(const Json& scenario, const Options& opt);
CommandResult run_curve(const Json& scenario, const Options& opt);

/// Dispatch by subcommand name; wraps schema and numeric errors into the
/// documented exit codes and an "error" report field.
CommandResult run_command(const std::string& command, const Json& scenario,
                          const Options& opt);

}  // namespace acpb::cli

#endif
