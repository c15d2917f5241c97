#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace shatter::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kOk = 0,
    kInternal = 1, // a self-check failed
    kUsage = 2,
    kParse = 3,
    kValidation = 4,
    kResource = 5,
};

/// Environment variable that overrides the default node budget of every exact search.
inline constexpr const char* kBudgetEnv = "SHATTER_BUDGET";

/// Runs one command line (without the program name) and returns its exit code.
/// Reports go to `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace shatter::cli
