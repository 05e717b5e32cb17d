#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cartan::cli {

// Exit codes shared by every verb.
enum ExitCode : int {
  kPass = 0,
  kVerificationFailed = 1,
  kParseError = 2,
  kPrecondition = 3,
  kNumericalFailure = 4,
};

/// Runs one command line (without the program name). Detail lines go to
/// `out` unless --quiet is given; every run ends with a single
/// "RESULT pass|fail <worst-residual>" line on `out`. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cartan::cli
