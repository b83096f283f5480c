// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wkf {

enum class ErrorKind {
  kInvalidInput,         // non-finite samples, bad values
  kSize,                 // length is not a power of two, too short
  kLevel,                // requested decomposition level out of range
  kStructure,            // inconsistent pyramid layout or filter mismatch
  kShape,                // vectors of mismatched length
  kInsufficientHistory,  // not enough segments to predict
  kConfig,               // invalid run configuration
  kParse,                // malformed input file
  kIo,                   // file cannot be opened or written
  kDivision,             // division guard tripped (zero truth value)
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type thrown by the library. The kind lets callers (the
/// CLI in particular) map failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace wkf
