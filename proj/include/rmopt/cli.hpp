#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rmopt::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,
  kComputationError = 2,
  kUndefinedMetric = 3,
};

/// Entry point behind the `rmopt` executable. `args` excludes the program
/// name. JSON results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rmopt::cli
