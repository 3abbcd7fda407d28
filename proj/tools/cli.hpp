#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kwnet::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kDataError = 2,
  kPartialSweep = 3,
};

/// Runs the command line `args` (without the program name). Regular output
/// goes to `out`, warnings and errors to `err`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace kwnet::cli
