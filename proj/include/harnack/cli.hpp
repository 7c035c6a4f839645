#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace harnack::cli {

enum ExitCode : int { kSuccess = 0, kViolation = 1, kUsageError = 2 };

/// Runs one command line (args excludes the program name) writing results to `out` and
/// diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace harnack::cli
