// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#include "wkf/similarity.hpp"

#include <cmath>
#include <string>

#include "wkf/error.hpp"

namespace wkf {

double scale_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    fail(ErrorKind::kShape, "detail vectors of length " +
                                std::to_string(a.size()) + " and " +
                                std::to_string(b.size()));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

ScaleRange resolve_scales(const DistanceOptions& options, int j0, int J) {
  const ScaleRange range = options.scales.value_or(ScaleRange{j0, J - 1});
  if (range.lo < j0 || range.lo > range.hi || range.hi > J - 1) {
    fail(ErrorKind::kLevel, "scale range [" + std::to_string(range.lo) + ", " +
                                std::to_string(range.hi) +
                                "] must satisfy " + std::to_string(j0) +
                                " <= lo <= hi <= " + std::to_string(J - 1));
  }
  return range;
}

double combined_distance(const WaveletPyramid& p1, const WaveletPyramid& p2,
                         const DistanceOptions& options) {
  if (p1.j0 != p2.j0 || p1.J != p2.J || p1.filter != p2.filter) {
    fail(ErrorKind::kStructure, "pyramids differ in levels or filter");
  }
  const ScaleRange range = resolve_scales(options, p1.j0, p1.J);
  double total = 0.0;
  for (int j = range.lo; j <= range.hi; ++j) {
    total += std::ldexp(scale_distance(p1.detail(j), p2.detail(j)), -j);
  }
  if (options.include_coarse) {
    total += std::ldexp(scale_distance(p1.coarse, p2.coarse), -p1.j0);
  }
  return total;
}

}  // namespace wkf
