#pragma once

// Command-line front end. `run_cli` takes the arguments without the program
// name and returns the process exit code:
//   0 success, 2 configuration error, 3 singular configuration,
//   4 continuation failure (partial data written).

#include <iosfwd>
#include <string>
#include <vector>

namespace ccb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSingular = 3;
inline constexpr int kExitContinuation = 4;

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Names accepted by --scenario.
std::vector<std::string> scenario_names();

/// Argument lists a scenario expands to (one subcommand run each).
std::vector<std::vector<std::string>> scenario_commands(const std::string& name);

}  // namespace ccb::cli
