// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#include "wkf/series_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wkf/error.hpp"

namespace wkf {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_number(std::string_view field, double& out) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  const auto* begin = field.data();
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

std::vector<double> parse_series(std::string_view text, std::string_view source) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<double> values;
  std::size_t row = 0;
  bool first_content_row = true;
  while (!text.empty()) {
    const auto newline = text.find('\n');
    const auto line = trim(text.substr(0, newline));
    text = newline == std::string_view::npos ? std::string_view{}
                                             : text.substr(newline + 1);
    ++row;
    if (line.empty()) continue;

    double value = 0.0;
    const bool numeric = parse_number(line, value);
    if (!numeric && first_content_row) {
      first_content_row = false;  // header
      continue;
    }
    first_content_row = false;
    if (!numeric) {
      fail(ErrorKind::kParse, std::string(source) + ": row " +
                                  std::to_string(row) + ": cannot parse '" +
                                  std::string(line) + "' as a number");
    }
    if (!std::isfinite(value)) {
      fail(ErrorKind::kParse, std::string(source) + ": row " +
                                  std::to_string(row) + ": non-finite value");
    }
    values.push_back(value);
  }
  if (values.empty()) {
    fail(ErrorKind::kParse, std::string(source) + ": no numeric rows");
  }
  return values;
}

std::vector<double> load_series(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_series(buffer.str(), path.string());
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_series(const std::filesystem::path& path,
                  std::span<const double> values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  for (double v : values) out << format_double(v) << '\n';
  if (!out) fail(ErrorKind::kIo, "write to '" + path.string() + "' failed");
}

}  // namespace wkf
