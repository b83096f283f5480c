// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wkf {

/// One block of the segmented series: P equally spaced samples.
struct Segment {
  std::vector<double> values;
  int index = 1;    // position of the block in the series, 1-based
  double dt = 1.0;  // sampling step, informational only

  std::size_t size() const noexcept { return values.size(); }
  /// Throws kInvalidInput when a value is non-finite, kSize when P < 2.
  void validate() const;
};

/// Interpolating (Deslauriers-Dubuc) prediction filters.
///
/// `kDD2` is linear interpolation between the two neighbouring even
/// samples. `kDD6` is the 6-point (quintic) Lagrange midpoint rule.
/// `kSym6Interp` is the 12-point rule, which is the autocorrelation of the
/// Symmlet/Daubechies filter with six vanishing moments.
enum class FilterId { kDD2, kDD6, kSym6Interp };

std::string_view to_string(FilterId id) noexcept;
/// Accepts "dd2", "dd6", "sym6-interp". Throws kConfig otherwise.
FilterId parse_filter_id(std::string_view name);

struct InterpolatingFilter {
  FilterId id;
  /// Weights applied to the even samples at offsets 1-L, ..., L relative to
  /// the odd sample being predicted, with L = taps.size() / 2.
  std::span<const double> taps;

  int half_width() const noexcept { return static_cast<int>(taps.size() / 2); }
};

const InterpolatingFilter& interpolating_filter(FilterId id) noexcept;

/// Multiscale decomposition of a length-2^J block.
///
/// `details[j - j0]` holds the 2^j detail coefficients of scale j, for
/// j = j0, ..., J-1; `coarse` holds the 2^j0 scaling coefficients.
struct WaveletPyramid {
  int j0 = 0;
  int J = 0;
  FilterId filter = FilterId::kSym6Interp;
  std::vector<double> coarse;
  std::vector<std::vector<double>> details;

  std::span<const double> detail(int j) const;
  std::span<double> detail(int j);
  std::size_t coefficient_count() const noexcept;
  /// Throws kStructure when the per-scale lengths do not match 2^j.
  void validate() const;
};

bool is_power_of_two(std::size_t n) noexcept;
/// Smallest J with 2^J >= n (n >= 1).
int ceil_log2(std::size_t n) noexcept;

/// Extends the block periodically on the right to the next power of two.
std::vector<double> pad_to_pow2(std::span<const double> values);
Segment pad_to_pow2(const Segment& segment);

/// Interpolating forward transform: the samples are taken as the finest
/// scaling coefficients and split level by level down to j0 with periodic
/// boundaries.
WaveletPyramid forward_dwt(std::span<const double> values, int j0,
                           FilterId filter);
WaveletPyramid forward_dwt(const Segment& segment, int j0, FilterId filter);

std::vector<double> inverse_dwt(const WaveletPyramid& pyramid);

/// y += a * x, coefficient-wise. Both pyramids must share their layout.
void accumulate(WaveletPyramid& y, double a, const WaveletPyramid& x);
/// Pyramid with the layout of `like` and all coefficients zero.
WaveletPyramid zeros_like(const WaveletPyramid& like);

}  // namespace wkf
