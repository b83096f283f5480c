// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wkf/kernel.hpp"
#include "wkf/predictor.hpp"

namespace wkf {

/// Resampling probabilities of the next block given the last one: the
/// normalized kernel weights over candidates m = 1..n-1.
std::vector<double> resample_weights(const PyramidHistory& history,
                                     const KernelSpec& kernel,
                                     const DistanceOptions& options = {});

struct ResamplingPlan {
  std::size_t draws = 500;  // B
  double alpha = 0.025;     // per tail; the interval targets 1 - 2 alpha
  std::uint64_t seed = 0;
  std::vector<double> weights;

  /// Throws kConfig when B = 0, alpha is outside (0, 0.5), or the weights are
  /// not a probability vector (tolerance 1e-12 on the sum).
  void validate() const;
};

/// Counter-based uniform draw in [0, 1): the (index+1)-th SplitMix64 output
/// of the stream seeded with `seed`. Any draw can be regenerated on its own.
double counter_uniform(std::uint64_t seed, std::uint64_t index) noexcept;

/// Index m (0-based, pointing at candidate m whose successor is block m+1)
/// selected by each of the B draws.
std::vector<std::size_t> draw_pseudo_indices(const ResamplingPlan& plan);

/// Pseudo-realizations of the next block. `next_blocks[m]` is the block that
/// followed candidate m, i.e. Z_{m+2} in 1-based series numbering.
std::vector<std::vector<double>> draw_pseudo_blocks(
    const ResamplingPlan& plan,
    std::span<const std::vector<double>> next_blocks);

/// Smallest x with empirical CDF(x) >= p (inverse empirical CDF).
double empirical_quantile(std::vector<double> values, double p);

/// Smallest atom whose cumulative weight reaches p.
double weighted_quantile(std::span<const double> atoms,
                         std::span<const double> weights, double p);

enum class QuantileMode {
  kMonteCarlo,  // B pseudo-blocks, empirical quantiles
  kExact,       // weighted quantiles of the n-1 atoms, no sampling
};

struct PredictionInterval {
  std::vector<double> lower;
  std::vector<double> upper;
  double alpha = 0.0;
  std::size_t b_used = 0;
  std::vector<std::string> warnings;
};

/// Pointwise interval for the next block. Residuals R* = Z* - center are
/// shifted back by the center, so each bound is a quantile of the
/// pseudo-block values at t_i. `center` fixes P; every next block must have
/// at least that many samples.
PredictionInterval prediction_interval(
    std::span<const std::vector<double>> next_blocks,
    std::span<const double> center, const ResamplingPlan& plan,
    QuantileMode mode = QuantileMode::kMonteCarlo);

}  // namespace wkf
