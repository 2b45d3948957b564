#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace msmmean::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kMemory = 3,
  kInvalidInput = 4,
  kTimeout = 5,
  kInternal = 70,
};

/// Runs the command line `args` (without the program name), writing results
/// to `out` (unless --out redirects them) and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace msmmean::cli
