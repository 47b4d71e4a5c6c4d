#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bjaudit::cli {

/// Exit codes: 0 success (including detected violations), 2 usage error,
/// 3 domain or numeric failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `lo:hi:n` (linear, endpoints included), `log:lo:hi:n`, or `a,b,c`.
std::vector<double> parse_grid(const std::string& spec);

/// A number, or inf / infinity.
double parse_number(const std::string& text);

}  // namespace bjaudit::cli
