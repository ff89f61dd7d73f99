#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isocone::cli {

enum ExitCode : int {
  kPass = 0,
  kRefuted = 1,
  kInconclusive = 2,
  kInputError = 3,
};

/// Runs one command line (without the program name). The JSON report goes
/// to `out` (or to --out FILE), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isocone::cli
