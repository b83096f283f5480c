// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#include "wkf/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wkf/error.hpp"

namespace wkf {
namespace {

void require_history(std::size_t n) {
  if (n < 2) {
    fail(ErrorKind::kInsufficientHistory,
         "at least 2 segments are needed to forecast, got " + std::to_string(n));
  }
}

std::vector<double> kernel_values(const KernelSpec& kernel,
                                  std::span<const double> distances) {
  std::vector<double> out(distances.size());
  for (std::size_t m = 0; m < distances.size(); ++m) {
    out[m] = kernel.weight(distances[m]);
  }
  return out;
}

// Linear interpolation between order statistics.
double quantile_sorted(std::span<const double> sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::string_view to_string(Weighting weighting) noexcept {
  switch (weighting) {
    case Weighting::kShrunk: return "shrunk";
    case Weighting::kNormalized: return "normalized";
  }
  return "unknown";
}

Weighting parse_weighting(std::string_view name) {
  if (name == "shrunk") return Weighting::kShrunk;
  if (name == "normalized") return Weighting::kNormalized;
  fail(ErrorKind::kConfig, "unknown weighting '" + std::string(name) +
                               "' (expected shrunk or normalized)");
}

PyramidHistory::PyramidHistory(std::vector<std::vector<double>> coefficients,
                               FilterId filter, int j0)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) {
    fail(ErrorKind::kInsufficientHistory, "empty history");
  }
  const std::size_t length = coefficients_.front().size();
  pyramids_.reserve(coefficients_.size());
  for (std::size_t m = 0; m < coefficients_.size(); ++m) {
    const auto& xi = coefficients_[m];
    if (xi.size() != length) {
      fail(ErrorKind::kShape, "segment " + std::to_string(m + 1) + " has " +
                                  std::to_string(xi.size()) +
                                  " coefficients, expected " +
                                  std::to_string(length));
    }
    for (std::size_t k = 0; k < xi.size(); ++k) {
      if (!std::isfinite(xi[k])) {
        fail(ErrorKind::kInvalidInput, "non-finite value at position " +
                                           std::to_string(k) + " of segment " +
                                           std::to_string(m + 1));
      }
    }
    pyramids_.push_back(forward_dwt(xi, j0, filter));
  }
}

PyramidHistory PyramidHistory::from_segments(std::span<const Segment> segments,
                                             FilterId filter, int j0) {
  std::vector<std::vector<double>> padded;
  padded.reserve(segments.size());
  for (const auto& s : segments) {
    s.validate();
    if (s.size() != segments.front().size()) {
      fail(ErrorKind::kShape, "segment " + std::to_string(s.index) + " has " +
                                  std::to_string(s.size()) +
                                  " samples, expected " +
                                  std::to_string(segments.front().size()));
    }
    padded.push_back(pad_to_pow2(s.values));
  }
  return PyramidHistory(std::move(padded), filter, j0);
}

std::vector<double> PyramidHistory::distances_from(
    std::size_t query, const DistanceOptions& options) const {
  const auto& q = pyramids_.at(query);
  std::vector<double> out(query);
  for (std::size_t m = 0; m < query; ++m) {
    out[m] = combined_distance(q, pyramids_[m], options);
  }
  return out;
}

std::vector<double> shrunk_weights(std::span<const double> kernel_values) {
  const double n = static_cast<double>(kernel_values.size() + 1);
  double total = 0.0;
  for (double k : kernel_values) total += k;
  const double denom = 1.0 / n + total;
  std::vector<double> out(kernel_values.size());
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = kernel_values[m] / denom;
  return out;
}

std::vector<double> normalized_weights(std::span<const double> kernel_values) {
  require_history(kernel_values.size() + 1);
  const double n = static_cast<double>(kernel_values.size() + 1);
  double total = 0.0;
  for (double k : kernel_values) total += k;
  const double denom = 1.0 / n + total;
  const double floor_mass = 1.0 / (n * (n - 1.0));
  std::vector<double> out(kernel_values.size());
  for (std::size_t m = 0; m < out.size(); ++m) {
    out[m] = (kernel_values[m] + floor_mass) / denom;
  }
  return out;
}

std::vector<double> averaging_weights(Weighting weighting,
                                      std::span<const double> kernel_values) {
  return weighting == Weighting::kShrunk ? shrunk_weights(kernel_values)
                                         : normalized_weights(kernel_values);
}

PredictionResult predict_coefficients(const PyramidHistory& history,
                                      const KernelSpec& kernel,
                                      const PredictorConfig& config) {
  const std::size_t n = history.size();
  require_history(n);
  const std::size_t query = n - 1;

  PredictionResult result;
  result.h_used = kernel.bandwidth();
  result.distances = history.distances_from(query, config.distance);
  const auto kv = kernel_values(kernel, result.distances);
  for (double k : kv) result.effective_sample += k;
  result.weights = averaging_weights(config.weighting, kv);

  // Candidate m is followed by block m+1 in the history.
  result.xi_pred.assign(history.length(), 0.0);
  WaveletPyramid combined = zeros_like(history.pyramid(0));
  for (std::size_t m = 0; m < query; ++m) {
    const double w = result.weights[m];
    const auto& next = history.coefficients(m + 1);
    for (std::size_t k = 0; k < next.size(); ++k) result.xi_pred[k] += w * next[k];
    accumulate(combined, w, history.pyramid(m + 1));
  }
  result.curve = inverse_dwt(combined);
  return result;
}

PredictionResult predict_coefficients(
    std::span<const std::vector<double>> history, const KernelSpec& kernel,
    const PredictorConfig& config) {
  require_history(history.size());
  return predict_coefficients(
      PyramidHistory({history.begin(), history.end()}, config.filter, config.j0),
      kernel, config);
}

std::vector<double> default_bandwidth_grid(const PyramidHistory& history,
                                           const DistanceOptions& options,
                                           std::size_t count) {
  std::vector<double> pairwise;
  for (std::size_t i = 1; i < history.size(); ++i) {
    const auto d = history.distances_from(i, options);
    pairwise.insert(pairwise.end(), d.begin(), d.end());
  }
  if (pairwise.empty() || count == 0) return {1.0};
  std::sort(pairwise.begin(), pairwise.end());
  double hi = quantile_sorted(pairwise, 0.99);
  double lo = quantile_sorted(pairwise, 0.01);
  if (!(hi > 0.0)) return {1.0};
  if (!(lo > 0.0)) lo = hi * 1e-3;
  if (count == 1 || lo == hi) return {hi};

  std::vector<double> grid(count);
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t g = 0; g < count; ++g) {
    grid[g] = lo * std::exp(step * static_cast<double>(g));
  }
  grid.back() = hi;
  return grid;
}

CvResult cv_bandwidth(const PyramidHistory& history,
                      std::span<const double> grid,
                      const PredictorConfig& config,
                      std::size_t sample_count) {
  if (grid.empty()) fail(ErrorKind::kConfig, "bandwidth grid is empty");
  for (double h : grid) {
    if (!std::isfinite(h) || h <= 0.0) {
      fail(ErrorKind::kConfig, "bandwidth grid values must be finite and > 0");
    }
  }
  const std::size_t n = history.size();
  if (n < 3) {
    fail(ErrorKind::kInsufficientHistory,
         "cross-validation needs at least 3 segments, got " + std::to_string(n));
  }
  sample_count = std::min(sample_count, history.length());

  // Query q forecasts block q+1 from blocks 0..q; candidates are m < q.
  std::vector<std::vector<double>> distances(n - 1);
  for (std::size_t q = 1; q + 1 < n; ++q) {
    distances[q] = history.distances_from(q, config.distance);
  }

  CvResult result;
  result.grid.assign(grid.begin(), grid.end());
  result.cv_values.resize(grid.size());
  std::vector<double> kv;
  std::vector<double> forecast(sample_count);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const KernelSpec kernel(config.kernel, grid[g]);
    double total = 0.0;
    for (std::size_t q = 1; q + 1 < n; ++q) {
      kv = kernel_values(kernel, distances[q]);
      const auto w = averaging_weights(config.weighting, kv);
      std::fill(forecast.begin(), forecast.end(), 0.0);
      for (std::size_t m = 0; m < q; ++m) {
        const auto& next = history.coefficients(m + 1);
        for (std::size_t k = 0; k < sample_count; ++k) forecast[k] += w[m] * next[k];
      }
      const auto& truth = history.coefficients(q + 1);
      double sq = 0.0;
      for (std::size_t k = 0; k < sample_count; ++k) {
        const double e = truth[k] - forecast[k];
        sq += e * e;
      }
      total += sq / static_cast<double>(sample_count);
    }
    result.cv_values[g] = total / static_cast<double>(n - 2);
  }

  for (std::size_t g = 1; g < grid.size(); ++g) {
    const double best = result.cv_values[result.best_index];
    const double cur = result.cv_values[g];
    if (cur < best || (cur == best && grid[g] < grid[result.best_index])) {
      result.best_index = g;
    }
  }
  return result;
}

CvResult cv_bandwidth(std::span<const Segment> segments,
                      std::span<const double> grid,
                      const PredictorConfig& config) {
  if (grid.empty()) fail(ErrorKind::kConfig, "bandwidth grid is empty");
  if (segments.empty()) fail(ErrorKind::kInsufficientHistory, "no segments");
  const auto history =
      PyramidHistory::from_segments(segments, config.filter, config.j0);
  return cv_bandwidth(history, grid, config, segments.front().size());
}

OneAheadForecast predict_one_ahead(std::span<const Segment> segments,
                                   const PredictorConfig& config) {
  require_history(segments.size());
  const auto history =
      PyramidHistory::from_segments(segments, config.filter, config.j0);
  const std::size_t p = segments.front().size();

  OneAheadForecast out;
  double h = 0.0;
  if (config.bandwidth) {
    h = *config.bandwidth;
  } else {
    const auto grid = config.cv_grid.empty()
                          ? default_bandwidth_grid(history, config.distance)
                          : config.cv_grid;
    out.cv = cv_bandwidth(history, grid, config, p);
    h = out.cv->best_bandwidth();
  }
  out.prediction =
      predict_coefficients(history, KernelSpec(config.kernel, h), config);
  out.prediction.curve.resize(p);
  return out;
}

PredictionResult predict_one_ahead(std::span<const Segment> segments,
                                   const KernelSpec& kernel,
                                   const PredictorConfig& config) {
  require_history(segments.size());
  const auto history =
      PyramidHistory::from_segments(segments, config.filter, config.j0);
  auto result = predict_coefficients(history, kernel, config);
  result.curve.resize(segments.front().size());
  return result;
}

}  // namespace wkf
