#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dirprior::app {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidInput = 1,
  kExitNumerical = 2,
  kExitMismatch = 3,
};

/// Runs the command line `args` (without the program name), writing
/// reports to `out` and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dirprior::app
