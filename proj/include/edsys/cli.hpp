#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace edsys::cli {

inline constexpr const char* kToolName = "edschar";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  ok = 0,
  usage = 1,
  parse_failure = 2,
  model_failure = 3,
  disagreement = 4,
  check_failure = 5,
};

/// Runs the command line `args` (without the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace edsys::cli
