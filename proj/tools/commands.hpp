#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lincov::cli {

inline constexpr const char* kVersion = "lincov 1.0.0";

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFailure = 1;  ///< only with --strict
inline constexpr int kExitInputError = 2;

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lincov::cli
