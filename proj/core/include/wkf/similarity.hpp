// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#pragma once

#include <optional>
#include <span>

#include "wkf/wavelet.hpp"

namespace wkf {

/// Inclusive range of detail scales entering the combined distance.
struct ScaleRange {
  int lo = 0;
  int hi = 0;
};

/// Options of the multiscale distance. An empty `scales` means every detail
/// scale j0..J-1 of the pyramids being compared.
struct DistanceOptions {
  std::optional<ScaleRange> scales;
  /// Adds 2^-j0 times the Euclidean distance of the coarse coefficients.
  bool include_coarse = false;
};

/// Euclidean distance between the detail vectors of one scale.
double scale_distance(std::span<const double> a, std::span<const double> b);

/// Sum over the selected scales of 2^-j times the per-scale distance.
double combined_distance(const WaveletPyramid& p1, const WaveletPyramid& p2,
                         const DistanceOptions& options = {});

/// Resolves the effective range for pyramids with levels [j0, J) and checks
/// j0 <= lo <= hi <= J-1 (kLevel otherwise).
ScaleRange resolve_scales(const DistanceOptions& options, int j0, int J);

}  // namespace wkf
