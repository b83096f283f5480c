// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#include "wkf/wavelet.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>
#include <utility>

#include "wkf/error.hpp"

namespace wkf {
namespace {

// Lagrange midpoint weights, stored as exact dyadic rationals.
constexpr std::array<double, 2> kDD2Taps = {0.5, 0.5};

constexpr double kDD6Scale = 1.0 / 256.0;
constexpr std::array<double, 6> kDD6Taps = {
    3 * kDD6Scale,   -25 * kDD6Scale, 150 * kDD6Scale,
    150 * kDD6Scale, -25 * kDD6Scale, 3 * kDD6Scale};

constexpr double kDD12Scale = 1.0 / 524288.0;
constexpr std::array<double, 12> kSym6InterpTaps = {
    -63 * kDD12Scale,     847 * kDD12Scale,    -5445 * kDD12Scale,
    22869 * kDD12Scale,   -76230 * kDD12Scale, 320166 * kDD12Scale,
    320166 * kDD12Scale,  -76230 * kDD12Scale, 22869 * kDD12Scale,
    -5445 * kDD12Scale,   847 * kDD12Scale,    -63 * kDD12Scale};

const InterpolatingFilter kFilters[] = {
    {FilterId::kDD2, kDD2Taps},
    {FilterId::kDD6, kDD6Taps},
    {FilterId::kSym6Interp, kSym6InterpTaps},
};

inline std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
  const auto m = static_cast<std::ptrdiff_t>(n);
  std::ptrdiff_t r = i % m;
  return static_cast<std::size_t>(r < 0 ? r + m : r);
}

// Interpolating prediction of the odd sample between evens[k] and evens[k+1].
inline double predict_odd(const InterpolatingFilter& f,
                          std::span<const double> evens, std::size_t k) {
  const int half = f.half_width();
  double acc = 0.0;
  for (int i = 0; i < 2 * half; ++i) {
    const auto pos = static_cast<std::ptrdiff_t>(k) - half + 1 + i;
    acc += f.taps[static_cast<std::size_t>(i)] * evens[wrap(pos, evens.size())];
  }
  return acc;
}

}  // namespace

void Segment::validate() const {
  if (values.size() < 2) {
    fail(ErrorKind::kSize, "segment needs at least 2 samples, got " +
                               std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      fail(ErrorKind::kInvalidInput,
           "non-finite sample at position " + std::to_string(i) +
               " of segment " + std::to_string(index));
    }
  }
}

std::string_view to_string(FilterId id) noexcept {
  switch (id) {
    case FilterId::kDD2: return "dd2";
    case FilterId::kDD6: return "dd6";
    case FilterId::kSym6Interp: return "sym6-interp";
  }
  return "unknown";
}

FilterId parse_filter_id(std::string_view name) {
  if (name == "dd2") return FilterId::kDD2;
  if (name == "dd6") return FilterId::kDD6;
  if (name == "sym6-interp") return FilterId::kSym6Interp;
  fail(ErrorKind::kConfig, "unknown filter '" + std::string(name) +
                               "' (expected dd2, dd6 or sym6-interp)");
}

const InterpolatingFilter& interpolating_filter(FilterId id) noexcept {
  for (const auto& f : kFilters) {
    if (f.id == id) return f;
  }
  return kFilters[2];
}

std::span<const double> WaveletPyramid::detail(int j) const {
  if (j < j0 || j >= J) {
    fail(ErrorKind::kLevel, "scale " + std::to_string(j) + " outside [" +
                                std::to_string(j0) + ", " +
                                std::to_string(J - 1) + "]");
  }
  return details[static_cast<std::size_t>(j - j0)];
}

std::span<double> WaveletPyramid::detail(int j) {
  const auto view = std::as_const(*this).detail(j);
  return {const_cast<double*>(view.data()), view.size()};
}

std::size_t WaveletPyramid::coefficient_count() const noexcept {
  std::size_t total = coarse.size();
  for (const auto& d : details) total += d.size();
  return total;
}

void WaveletPyramid::validate() const {
  if (j0 < 0 || J <= j0 || J > 30) {
    fail(ErrorKind::kStructure, "invalid levels j0=" + std::to_string(j0) +
                                    ", J=" + std::to_string(J));
  }
  if (coarse.size() != (std::size_t{1} << j0)) {
    fail(ErrorKind::kStructure,
         "coarse block holds " + std::to_string(coarse.size()) +
             " coefficients, expected " + std::to_string(1 << j0));
  }
  if (details.size() != static_cast<std::size_t>(J - j0)) {
    fail(ErrorKind::kStructure, "expected " + std::to_string(J - j0) +
                                    " detail scales, got " +
                                    std::to_string(details.size()));
  }
  for (int j = j0; j < J; ++j) {
    const auto& d = details[static_cast<std::size_t>(j - j0)];
    if (d.size() != (std::size_t{1} << j)) {
      fail(ErrorKind::kStructure,
           "scale " + std::to_string(j) + " holds " + std::to_string(d.size()) +
               " coefficients, expected " + std::to_string(1 << j));
    }
  }
}

bool is_power_of_two(std::size_t n) noexcept { return std::has_single_bit(n); }

int ceil_log2(std::size_t n) noexcept {
  return n <= 1 ? 0 : static_cast<int>(std::bit_width(n - 1));
}

std::vector<double> pad_to_pow2(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      fail(ErrorKind::kInvalidInput,
           "non-finite sample at position " + std::to_string(i));
    }
  }
  if (values.empty()) fail(ErrorKind::kSize, "cannot pad an empty segment");
  const std::size_t target = std::bit_ceil(values.size());
  std::vector<double> out(values.begin(), values.end());
  out.reserve(target);
  for (std::size_t i = values.size(); i < target; ++i) {
    out.push_back(values[i % values.size()]);
  }
  return out;
}

Segment pad_to_pow2(const Segment& segment) {
  segment.validate();
  return Segment{pad_to_pow2(segment.values), segment.index, segment.dt};
}

WaveletPyramid forward_dwt(std::span<const double> values, int j0,
                           FilterId filter) {
  if (values.size() < 2 || !is_power_of_two(values.size())) {
    fail(ErrorKind::kSize, "forward transform needs a power-of-two length >= 2, got " +
                               std::to_string(values.size()));
  }
  const int J = ceil_log2(values.size());
  if (j0 < 0 || j0 >= J) {
    fail(ErrorKind::kLevel, "coarsest level j0=" + std::to_string(j0) +
                                " must lie in [0, " + std::to_string(J - 1) +
                                "]");
  }
  const auto& f = interpolating_filter(filter);

  WaveletPyramid out;
  out.j0 = j0;
  out.J = J;
  out.filter = filter;
  out.details.resize(static_cast<std::size_t>(J - j0));

  std::vector<double> current(values.begin(), values.end());
  std::vector<double> evens;
  for (int j = J - 1; j >= j0; --j) {
    const std::size_t half = current.size() / 2;
    evens.resize(half);
    auto& d = out.details[static_cast<std::size_t>(j - j0)];
    d.resize(half);
    for (std::size_t k = 0; k < half; ++k) evens[k] = current[2 * k];
    for (std::size_t k = 0; k < half; ++k) {
      d[k] = current[2 * k + 1] - predict_odd(f, evens, k);
    }
    current.swap(evens);
  }
  out.coarse = std::move(current);
  return out;
}

WaveletPyramid forward_dwt(const Segment& segment, int j0, FilterId filter) {
  segment.validate();
  return forward_dwt(std::span<const double>(segment.values), j0, filter);
}

std::vector<double> inverse_dwt(const WaveletPyramid& pyramid) {
  pyramid.validate();
  const auto& f = interpolating_filter(pyramid.filter);
  std::vector<double> current = pyramid.coarse;
  std::vector<double> next;
  for (int j = pyramid.j0; j < pyramid.J; ++j) {
    const auto d = pyramid.detail(j);
    const std::size_t half = current.size();
    next.resize(2 * half);
    for (std::size_t k = 0; k < half; ++k) {
      next[2 * k] = current[k];
      next[2 * k + 1] = d[k] + predict_odd(f, current, k);
    }
    current.swap(next);
  }
  return current;
}

void accumulate(WaveletPyramid& y, double a, const WaveletPyramid& x) {
  if (y.j0 != x.j0 || y.J != x.J || y.filter != x.filter) {
    fail(ErrorKind::kStructure, "pyramid layouts differ");
  }
  for (std::size_t k = 0; k < y.coarse.size(); ++k) y.coarse[k] += a * x.coarse[k];
  for (std::size_t s = 0; s < y.details.size(); ++s) {
    auto& yd = y.details[s];
    const auto& xd = x.details[s];
    for (std::size_t k = 0; k < yd.size(); ++k) yd[k] += a * xd[k];
  }
}

WaveletPyramid zeros_like(const WaveletPyramid& like) {
  WaveletPyramid out = like;
  std::fill(out.coarse.begin(), out.coarse.end(), 0.0);
  for (auto& d : out.details) std::fill(d.begin(), d.end(), 0.0);
  return out;
}

}  // namespace wkf
