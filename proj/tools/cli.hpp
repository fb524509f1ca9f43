#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace citeshare::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kDataError = 2, kInvariantViolation = 3 };

/// Runs one command line (args excludes the program name). `in` backs
/// `--input -`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace citeshare::cli
