#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sprgeo {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitNotMember = 1,
  kExitInputError = 2,
  kExitHullUnstable = 3,
  kExitGridExhausted = 4,
};

/// Runs the command line `args` (without the program name) and returns the
/// exit code. All output goes to `out` / `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sprgeo
