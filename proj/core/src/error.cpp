// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#include "wkf/error.hpp"

namespace wkf {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid input";
    case ErrorKind::kSize: return "size error";
    case ErrorKind::kLevel: return "level error";
    case ErrorKind::kStructure: return "structure error";
    case ErrorKind::kShape: return "shape error";
    case ErrorKind::kInsufficientHistory: return "insufficient history";
    case ErrorKind::kConfig: return "config error";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kIo: return "io error";
    case ErrorKind::kDivision: return "division error";
  }
  return "error";
}

void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

}  // namespace wkf
