#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace algosr::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kBackendFailure = 2,
  kCorruptState = 3,
};

/// Entry point shared by the binary and the tests. `args` excludes argv[0].
/// Data goes to files or `out`; progress and diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace algosr::cli
