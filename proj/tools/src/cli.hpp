#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fermatsym::cli {

enum ExitCode : int { kOk = 0, kUndecided = 1, kUsageError = 2 };

/// Run one command line (without the program name). Reads the override
/// paths FERMATSYM_CURVES and FERMATSYM_SCENARIOS from the environment when
/// the corresponding flags are absent.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fermatsym::cli
