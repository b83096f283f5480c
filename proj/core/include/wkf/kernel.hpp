// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#pragma once

#include <string_view>

namespace wkf {

enum class KernelFamily { kGaussian, kLaplace };

std::string_view to_string(KernelFamily family) noexcept;
/// Accepts "gaussian" or "laplace".
KernelFamily parse_kernel_family(std::string_view name);

/// Bounded symmetric density evaluated at a nonnegative distance.
double kernel_eval(KernelFamily family, double u) noexcept;

/// Kernel family together with a strictly positive bandwidth.
class KernelSpec {
 public:
  /// Throws kConfig unless h is finite and > 0.
  KernelSpec(KernelFamily family, double bandwidth);

  KernelFamily family() const noexcept { return family_; }
  double bandwidth() const noexcept { return bandwidth_; }

  /// K(distance / h).
  double weight(double distance) const noexcept {
    return kernel_eval(family_, distance / bandwidth_);
  }

 private:
  KernelFamily family_;
  double bandwidth_;
};

}  // namespace wkf
