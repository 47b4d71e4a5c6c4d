#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace bjaudit::csv {

struct Row {
  std::size_t line = 0;  // 1-based line number in the source
  std::vector<std::string> fields;
};

/// Reads a comma-separated table. The first non-blank line must match
/// `expected_header` (whitespace-insensitive); every row must have the same
/// number of fields. Throws UsageError with the offending line number.
std::vector<Row> read_table(std::istream& in, const std::vector<std::string>& expected_header);

double parse_double(const Row& row, std::size_t column);
long long parse_int(const Row& row, std::size_t column);

/// Shortest text that carries 17 significant digits ("%.17g"); non-finite
/// values are spelled inf, -inf, nan.
std::string format_double(double x);

}  // namespace bjaudit::csv
