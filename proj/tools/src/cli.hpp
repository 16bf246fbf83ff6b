#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dualcurve::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalid = 2,
  kInfeasible = 3,
  kNotConverged = 4,
};

/// Runs one command line (without the program name) and returns the exit
/// code. Reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dualcurve::cli
