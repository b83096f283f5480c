// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wkf/predictor.hpp"
#include "wkf/wavelet.hpp"

namespace wkf {

struct SegmentedSeries {
  std::vector<Segment> segments;
  std::size_t dropped = 0;  // trailing samples discarded
};

/// Cuts the series into consecutive blocks of `period` samples. A trailing
/// remainder is a kConfig error unless `drop_remainder` is set.
SegmentedSeries segment_series(std::span<const double> series,
                               std::size_t period, bool drop_remainder = false);

struct EvalReport {
  double rmae = 0.0;
  std::vector<double> per_point_abs_rel_err;
  std::size_t n0 = 0;  // 1-based index of the evaluated block
  std::string method_id;
};

/// Relative mean absolute error, mean_i |pred_i - truth_i| / |truth_i|.
/// A zero truth value is a kDivision error unless `epsilon_floor` is given,
/// in which case the denominator is max(|truth_i|, epsilon_floor).
EvalReport rmae(std::span<const double> pred, std::span<const double> truth,
                std::optional<double> epsilon_floor = std::nullopt);

/// Forecast of block n+1 by block n.
Segment naive_seasonal(std::span<const Segment> segments);

/// Any one-ahead method: receives blocks 1..i and returns block i+1.
using Forecaster =
    std::function<std::vector<double>(std::span<const Segment> history)>;

Forecaster make_wk_forecaster(PredictorConfig config);
Forecaster make_naive_forecaster();

struct RollingOptions {
  std::size_t min_history = 3;
  std::optional<double> epsilon_floor;
  std::string method_id = "method";
  bool drop_remainder = false;
};

struct RollingReport {
  std::vector<EvalReport> reports;
  double mean_rmae = 0.0;
  double median_rmae = 0.0;
};

/// Rolling origin: for every cut i >= min_history the method sees blocks
/// 1..i only and is scored on block i+1.
RollingReport rolling_eval(std::span<const double> series, std::size_t period,
                           const Forecaster& method,
                           const RollingOptions& options = {});

enum class SyntheticKind {
  /// Seasonal profile plus stationary AR(1) noise along the sample axis.
  kSeasonalAr,
  /// Z_{i+1} = g(Z_i) + noise with g(z) = s + c (mean(z) - mean(s)) u, so
  /// the block means follow an AR(1) with coefficient c.
  kMarkovFunctional,
};

std::string_view to_string(SyntheticKind kind) noexcept;
SyntheticKind parse_synthetic_kind(std::string_view name);

struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::kSeasonalAr;
  std::size_t segments = 100;
  std::size_t period = 16;
  double noise = 1.0;  // marginal noise scale
  std::uint64_t seed = 0;
  double contraction = 0.5;     // c, markov_functional only
  double ar_coefficient = 0.5;  // phi, seasonal_ar only
};

/// Seasonal profile s(t), t = 0..period-1, bounded away from zero.
std::vector<double> seasonal_profile(std::size_t period);

/// E(Z_{i+1} | Z_i = block) for the markov_functional generator.
std::vector<double> markov_conditional_mean(std::span<const double> block,
                                            const SyntheticSpec& spec);

/// Strictly stationary series of spec.segments * spec.period samples.
std::vector<double> gen_synthetic(const SyntheticSpec& spec);

}  // namespace wkf
