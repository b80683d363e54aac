#pragma once

// Command-line front end: bounds, lebesgue, sample, table, verify.
// Exit codes: 0 success, 1 scientific failure, 2 usage or configuration error.

#include <iosfwd>
#include <string>
#include <vector>

namespace fmmbound::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Ratio above which a measured error counts as a bound violation.
inline constexpr double kViolationSlack = 1.02;

/// "a..b", "a,b,c" or a single integer. Throws ConfigError otherwise.
std::vector<int> parse_orders(const std::string& text);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fmmbound::cli
