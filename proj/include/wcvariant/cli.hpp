#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace wcv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation. Reports go to `out` (or --output), diagnostics to `err`.
/// `terminal` allows ANSI styling unless WCVARIANT_NO_COLOR is set.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err, bool terminal = false);

int run(int argc, const char* const* argv);

std::string version();

}  // namespace wcv::cli
