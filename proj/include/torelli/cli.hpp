#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace torelli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitInvariantViolation = 1,
  kExitMalformedInput = 2,
  kExitHashMismatch = 3,
};

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out` unless --out names a file; logs go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace torelli
