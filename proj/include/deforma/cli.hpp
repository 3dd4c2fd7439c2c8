#pragma once

#include <iosfwd>

namespace deforma::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

/// Entry point of the `deforma` executable: subcommands verify, spectrum,
/// profile and deriv. Results go to `out` (or --output), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace deforma::cli
