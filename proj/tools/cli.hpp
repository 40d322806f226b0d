#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace defrag::tools {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInvalidInstance = 2,
  kExitPrecondition = 3,
};

/// Runs one command line (without the program name) and returns its exit code.
int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace defrag::tools
