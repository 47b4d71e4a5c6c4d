#include "bjaudit/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bjaudit/errors.hpp"

namespace bjaudit::csv {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw UsageError("line " + std::to_string(line) + ": " + msg);
}

}  // namespace

std::vector<Row> read_table(std::istream& in, const std::vector<std::string>& expected_header) {
  std::vector<Row> rows;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto fields = split(line);
    if (!have_header) {
      if (fields != expected_header) {
        std::string want;
        for (const auto& h : expected_header) want += (want.empty() ? "" : ",") + h;
        fail(lineno, "expected header '" + want + "'");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != expected_header.size()) {
      fail(lineno, "expected " + std::to_string(expected_header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    rows.push_back({lineno, std::move(fields)});
  }
  if (!have_header) fail(lineno, "missing header");
  return rows;
}

double parse_double(const Row& row, std::size_t column) {
  const std::string& s = row.fields.at(column);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    fail(row.line, "column " + std::to_string(column + 1) + ": not a number: '" + s + "'");
  }
  return value;
}

long long parse_int(const Row& row, std::size_t column) {
  const std::string& s = row.fields.at(column);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    fail(row.line, "column " + std::to_string(column + 1) + ": not an integer: '" + s + "'");
  }
  return value;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace bjaudit::csv
