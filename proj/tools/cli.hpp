#pragma once

#include <iosfwd>

namespace wordassoc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 1;
inline constexpr int kExitUsage = 2;

// Parses argv and runs one subcommand. Report text goes to `out`, diagnostics
// to `err`. Never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace wordassoc::cli
