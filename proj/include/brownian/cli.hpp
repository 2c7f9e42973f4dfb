#pragma once

#include <iosfwd>

namespace brownian::cli {

enum ExitCode : int {
  kOk = 0,
  kChecksFailed = 1,
  kUsage = 2,
  kIoError = 3,
  kInternal = 4,
};

/// Entry point of the `brownian` tool. Report or table output goes to `out`
/// unless --out is given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace brownian::cli
