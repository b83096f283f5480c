// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wkf {

/// Reads a one-column numeric CSV. A non-numeric first row is taken as a
/// header and skipped; blank lines are ignored; LF and CRLF are accepted.
/// Throws kIo when the file cannot be read and kParse (with the 1-based row
/// number) on malformed, non-finite, or missing data.
std::vector<double> load_series(const std::filesystem::path& path);

/// Same parser over an in-memory buffer; `source` names it in errors.
std::vector<double> parse_series(std::string_view text,
                                 std::string_view source = "<memory>");

/// One value per line, 17 significant digits.
void write_series(const std::filesystem::path& path,
                  std::span<const double> values);

/// "%.17g" rendering used by every numeric output file.
std::string format_double(double value);

}  // namespace wkf
