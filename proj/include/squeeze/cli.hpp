#pragma once

// Command-line front end shared by the executable and the tests.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

namespace squeeze::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitInvariant = 4;

/// Environment variable holding the default evaluation budget.
inline constexpr const char* kBudgetEnv = "SQUEEZE_BUDGET";

/// Runs one command. args excludes the program name. Results go to out (or to
/// the --out path), diagnostics to err.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// %g-style text with `precision` significant digits, independent of the locale.
std::string format_double(double v, int precision = 17);

/// FNV-1a over the arguments, skipping --out and its value.
std::uint64_t config_hash(std::span<const std::string> args);

}  // namespace squeeze::cli
