// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#include "wkf/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "wkf/error.hpp"

namespace wkf {
namespace {

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

// Shape carrying the Markov state. Its zero-mean sine part is what the
// detail coefficients see; the constant part moves the block mean.
std::vector<double> state_shape(std::size_t period) {
  std::vector<double> u(period);
  for (std::size_t t = 0; t < period; ++t) {
    u[t] = 1.0 + std::sin(2.0 * std::numbers::pi * static_cast<double>(t) /
                          static_cast<double>(period));
  }
  return u;
}

// Amplitude of the sine component of block - s, by least squares.
double state_of(std::span<const double> block, std::span<const double> s) {
  const std::size_t p = block.size();
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t < p; ++t) {
    const double w = std::sin(2.0 * std::numbers::pi * static_cast<double>(t) /
                              static_cast<double>(p));
    num += w * (block[t] - s[t]);
    den += w * w;
  }
  return num / den;
}

}  // namespace

SegmentedSeries segment_series(std::span<const double> series,
                               std::size_t period, bool drop_remainder) {
  if (period < 2) fail(ErrorKind::kConfig, "segment length P must be >= 2");
  const std::size_t count = series.size() / period;
  const std::size_t remainder = series.size() % period;
  if (remainder != 0 && !drop_remainder) {
    fail(ErrorKind::kConfig,
         "series length " + std::to_string(series.size()) +
             " is not a multiple of P=" + std::to_string(period) + " (" +
             std::to_string(remainder) +
             " trailing samples); pass --drop-remainder to discard them");
  }
  SegmentedSeries out;
  out.dropped = remainder;
  out.segments.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Segment s;
    s.values.assign(series.begin() + static_cast<std::ptrdiff_t>(i * period),
                    series.begin() + static_cast<std::ptrdiff_t>((i + 1) * period));
    s.index = static_cast<int>(i + 1);
    s.validate();
    out.segments.push_back(std::move(s));
  }
  return out;
}

EvalReport rmae(std::span<const double> pred, std::span<const double> truth,
                std::optional<double> epsilon_floor) {
  if (pred.size() != truth.size() || truth.empty()) {
    fail(ErrorKind::kShape, "forecast has " + std::to_string(pred.size()) +
                                " points, truth has " + std::to_string(truth.size()));
  }
  EvalReport report;
  report.per_point_abs_rel_err.resize(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    double denom = std::abs(truth[i]);
    if (epsilon_floor) {
      denom = std::max(denom, *epsilon_floor);
    }
    if (denom == 0.0) {
      fail(ErrorKind::kDivision,
           "truth value is zero at index " + std::to_string(i));
    }
    report.per_point_abs_rel_err[i] = std::abs(pred[i] - truth[i]) / denom;
  }
  report.rmae = mean_of(report.per_point_abs_rel_err);
  return report;
}

Segment naive_seasonal(std::span<const Segment> segments) {
  if (segments.empty()) {
    fail(ErrorKind::kInsufficientHistory, "naive forecast of an empty history");
  }
  Segment out = segments.back();
  out.index = segments.back().index + 1;
  return out;
}

Forecaster make_wk_forecaster(PredictorConfig config) {
  return [config = std::move(config)](std::span<const Segment> history) {
    return predict_one_ahead(history, config).prediction.curve;
  };
}

Forecaster make_naive_forecaster() {
  return [](std::span<const Segment> history) {
    return naive_seasonal(history).values;
  };
}

RollingReport rolling_eval(std::span<const double> series, std::size_t period,
                           const Forecaster& method,
                           const RollingOptions& options) {
  if (period < 2 || series.size() < 3 * period) {
    fail(ErrorKind::kConfig, "rolling evaluation needs at least 3 segments of P=" +
                                 std::to_string(period) + " samples");
  }
  const auto segmented = segment_series(series, period, options.drop_remainder);
  const auto& segments = segmented.segments;
  const std::size_t start = std::max<std::size_t>(options.min_history, 1);
  if (start >= segments.size()) {
    fail(ErrorKind::kConfig, "min_history leaves no block to evaluate");
  }

  RollingReport out;
  std::vector<double> scores;
  for (std::size_t cut = start; cut < segments.size(); ++cut) {
    const auto forecast = method(std::span<const Segment>(segments).first(cut));
    auto report = rmae(forecast, segments[cut].values, options.epsilon_floor);
    report.n0 = cut + 1;
    report.method_id = options.method_id;
    scores.push_back(report.rmae);
    out.reports.push_back(std::move(report));
  }
  out.mean_rmae = mean_of(scores);
  out.median_rmae = median_of(std::move(scores));
  return out;
}

std::string_view to_string(SyntheticKind kind) noexcept {
  switch (kind) {
    case SyntheticKind::kSeasonalAr: return "seasonal_ar";
    case SyntheticKind::kMarkovFunctional: return "markov_functional";
  }
  return "unknown";
}

SyntheticKind parse_synthetic_kind(std::string_view name) {
  if (name == "seasonal_ar") return SyntheticKind::kSeasonalAr;
  if (name == "markov_functional") return SyntheticKind::kMarkovFunctional;
  fail(ErrorKind::kConfig, "unknown generator '" + std::string(name) + "'");
}

std::vector<double> seasonal_profile(std::size_t period) {
  std::vector<double> s(period);
  const double p = static_cast<double>(period);
  for (std::size_t t = 0; t < period; ++t) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(t) / p;
    s[t] = 10.0 + 2.0 * std::sin(phase) + std::cos(2.0 * phase);
  }
  return s;
}

std::vector<double> markov_conditional_mean(std::span<const double> block,
                                            const SyntheticSpec& spec) {
  if (block.size() != spec.period) {
    fail(ErrorKind::kShape, "block length differs from the generator period");
  }
  if (spec.period < 4) fail(ErrorKind::kConfig, "markov_functional needs P >= 4");
  const auto s = seasonal_profile(spec.period);
  const auto u = state_shape(spec.period);
  const double state = state_of(block, s);
  std::vector<double> out(spec.period);
  for (std::size_t t = 0; t < spec.period; ++t) {
    out[t] = s[t] + spec.contraction * state * u[t];
  }
  return out;
}

std::vector<double> gen_synthetic(const SyntheticSpec& spec) {
  if (spec.segments == 0 || spec.period < 2 || spec.noise < 0.0) {
    fail(ErrorKind::kConfig, "generator needs segments >= 1, P >= 2, noise >= 0");
  }
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto s = seasonal_profile(spec.period);
  std::vector<double> series;
  series.reserve(spec.segments * spec.period);

  if (spec.kind == SyntheticKind::kSeasonalAr) {
    const double phi = spec.ar_coefficient;
    if (!(std::abs(phi) < 1.0)) fail(ErrorKind::kConfig, "|ar_coefficient| must be < 1");
    const double innovation = spec.noise * std::sqrt(1.0 - phi * phi);
    double e = spec.noise * gauss(rng);  // stationary start
    for (std::size_t i = 0; i < spec.segments; ++i) {
      for (std::size_t t = 0; t < spec.period; ++t) {
        if (i != 0 || t != 0) e = phi * e + innovation * gauss(rng);
        series.push_back(s[t] + e);
      }
    }
    return series;
  }

  const double c = spec.contraction;
  if (!(std::abs(c) < 1.0)) fail(ErrorKind::kConfig, "|contraction| must be < 1");
  if (spec.period < 4) fail(ErrorKind::kConfig, "markov_functional needs P >= 4");
  const auto u = state_shape(spec.period);
  const double p = static_cast<double>(spec.period);
  const double pointwise = 0.5 * spec.noise;
  // The amplitude read back from a block carries pointwise noise with
  // variance pointwise^2 * 2 / P on top of the true amplitude.
  const double readback_var = pointwise * pointwise * 2.0 / p;
  const double amplitude_var =
      (c * c * readback_var + spec.noise * spec.noise) / (1.0 - c * c);

  double amplitude = std::sqrt(amplitude_var) * gauss(rng);  // stationary start
  std::vector<double> block(spec.period);
  for (std::size_t i = 0; i < spec.segments; ++i) {
    if (i > 0) amplitude = c * state_of(block, s) + spec.noise * gauss(rng);
    for (std::size_t t = 0; t < spec.period; ++t) {
      block[t] = s[t] + amplitude * u[t] + pointwise * gauss(rng);
    }
    series.insert(series.end(), block.begin(), block.end());
  }
  return series;
}

}  // namespace wkf
