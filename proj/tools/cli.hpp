#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cvbell::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,
  kUnphysical = 3,
  kPrecondition = 4,
  kOracleFailure = 5,
};

// Runs one command line (without the program name). Reports go to `out`
// unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cvbell::cli
