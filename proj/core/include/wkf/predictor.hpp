// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wkf/kernel.hpp"
#include "wkf/similarity.hpp"
#include "wkf/wavelet.hpp"

namespace wkf {

/// How kernel values K(D_m / h) become averaging weights.
enum class Weighting {
  /// w_m = K_m / (1/n + sum K). The weights sum to less than one and the
  /// forecast is shrunk towards zero when the history is short or the
  /// bandwidth small.
  kShrunk,
  /// w_m = (K_m + 1/(n(n-1))) / (1/n + sum K). The weights sum to one and the
  /// forecast is a convex combination of the observed next blocks. These are
  /// also the resampling probabilities of the prediction intervals.
  kNormalized,
};

std::string_view to_string(Weighting weighting) noexcept;
/// Accepts "shrunk" or "normalized".
Weighting parse_weighting(std::string_view name);

struct PredictorConfig {
  FilterId filter = FilterId::kSym6Interp;
  int j0 = 0;
  DistanceOptions distance;
  KernelFamily kernel = KernelFamily::kGaussian;
  Weighting weighting = Weighting::kNormalized;
  /// Fixed bandwidth. When absent the bandwidth is chosen by cross-validation
  /// over `cv_grid`, or over default_bandwidth_grid() when that is empty too.
  std::optional<double> bandwidth;
  std::vector<double> cv_grid;
};

/// Finest scaling coefficients of every block in the history together with
/// their pyramids, computed once and shared by the predictor, the
/// cross-validation loop and the interval code.
class PyramidHistory {
 public:
  /// Every block must have the same power-of-two length >= 2 and finite
  /// values. Throws kShape, kSize, kInvalidInput or kLevel.
  PyramidHistory(std::vector<std::vector<double>> coefficients,
                 FilterId filter, int j0);

  /// Pads each segment to the next power of two first.
  static PyramidHistory from_segments(std::span<const Segment> segments,
                                      FilterId filter, int j0);

  std::size_t size() const noexcept { return coefficients_.size(); }
  /// Length 2^J of every coefficient vector.
  std::size_t length() const noexcept { return coefficients_.front().size(); }
  int finest_level() const noexcept { return pyramids_.front().J; }

  /// 0-based access: block m of the history is Xi_{m+1}.
  const std::vector<double>& coefficients(std::size_t m) const {
    return coefficients_.at(m);
  }
  const WaveletPyramid& pyramid(std::size_t m) const { return pyramids_.at(m); }

  /// D(C(Xi_query), C(Xi_m)) for m = 0 .. query-1.
  std::vector<double> distances_from(std::size_t query,
                                     const DistanceOptions& options) const;

 private:
  std::vector<std::vector<double>> coefficients_;
  std::vector<WaveletPyramid> pyramids_;
};

/// Shrunk weights K_m / (1/n + sum K), n = kernel_values.size() + 1.
std::vector<double> shrunk_weights(std::span<const double> kernel_values);

/// Normalized weights (K_m + 1/(n(n-1))) / (1/n + sum K), n as above. They
/// sum to one, lie in [0, 1] and become uniform when every kernel value
/// underflows to zero.
std::vector<double> normalized_weights(std::span<const double> kernel_values);

std::vector<double> averaging_weights(Weighting weighting,
                                      std::span<const double> kernel_values);

struct PredictionResult {
  /// Predicted finest scaling coefficients of the next block, length 2^J.
  std::vector<double> xi_pred;
  /// Time-domain forecast, the first P samples of the reconstruction.
  std::vector<double> curve;
  /// Averaging weight of each candidate block m = 1..n-1.
  std::vector<double> weights;
  std::vector<double> distances;
  double h_used = 0.0;
  /// Sum of kernel values over the candidates.
  double effective_sample = 0.0;
};

/// Kernel forecast of the next block's scaling coefficients from the last
/// block of `history`. `curve` is left at full length 2^J.
PredictionResult predict_coefficients(const PyramidHistory& history,
                                      const KernelSpec& kernel,
                                      const PredictorConfig& config);

PredictionResult predict_coefficients(
    std::span<const std::vector<double>> history, const KernelSpec& kernel,
    const PredictorConfig& config);

struct CvResult {
  std::vector<double> grid;
  std::vector<double> cv_values;
  std::size_t best_index = 0;

  double best_bandwidth() const { return grid.at(best_index); }
};

/// 32 log-spaced bandwidths between the 1% and 99% quantiles of the pairwise
/// distances among the history's pyramids.
std::vector<double> default_bandwidth_grid(const PyramidHistory& history,
                                           const DistanceOptions& options,
                                           std::size_t count = 32);

/// Time-series cross-validation: block i+1 is forecast from blocks 1..i for
/// i = 2..n-1 and the mean squared error over the first `sample_count`
/// samples is averaged. Ties go to the smallest bandwidth.
CvResult cv_bandwidth(const PyramidHistory& history,
                      std::span<const double> grid,
                      const PredictorConfig& config,
                      std::size_t sample_count);

CvResult cv_bandwidth(std::span<const Segment> segments,
                      std::span<const double> grid,
                      const PredictorConfig& config);

struct OneAheadForecast {
  PredictionResult prediction;
  std::optional<CvResult> cv;
};

/// Full pipeline on raw blocks of common length P: pad, pick the bandwidth
/// (fixed or cross-validated), forecast, truncate the curve to P samples.
OneAheadForecast predict_one_ahead(std::span<const Segment> segments,
                                   const PredictorConfig& config);

/// Same pipeline with the bandwidth already fixed.
PredictionResult predict_one_ahead(std::span<const Segment> segments,
                                   const KernelSpec& kernel,
                                   const PredictorConfig& config);

}  // namespace wkf
