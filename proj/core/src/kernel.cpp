// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#include "wkf/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wkf/error.hpp"

namespace wkf {

std::string_view to_string(KernelFamily family) noexcept {
  switch (family) {
    case KernelFamily::kGaussian: return "gaussian";
    case KernelFamily::kLaplace: return "laplace";
  }
  return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name) {
  if (name == "gaussian") return KernelFamily::kGaussian;
  if (name == "laplace") return KernelFamily::kLaplace;
  fail(ErrorKind::kConfig, "unknown kernel '" + std::string(name) +
                               "' (expected gaussian or laplace)");
}

double kernel_eval(KernelFamily family, double u) noexcept {
  switch (family) {
    case KernelFamily::kGaussian:
      return std::exp(-0.5 * u * u) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
    case KernelFamily::kLaplace:
      return 0.5 * std::exp(-std::abs(u));
  }
  return 0.0;
}

KernelSpec::KernelSpec(KernelFamily family, double bandwidth)
    : family_(family), bandwidth_(bandwidth) {
  if (!std::isfinite(bandwidth) || bandwidth <= 0.0) {
    fail(ErrorKind::kConfig,
         "bandwidth must be finite and > 0, got " + std::to_string(bandwidth));
  }
}

}  // namespace wkf
