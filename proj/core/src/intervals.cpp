// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#include "wkf/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wkf/error.hpp"

namespace wkf {
namespace {

constexpr double kWeightSumTolerance = 1e-12;

// 1-based rank of the inverse-CDF quantile among `count` sorted values.
// The small offset keeps p * count that is integral in exact arithmetic from
// rounding up to the next rank.
std::size_t quantile_rank(double p, std::size_t count) {
  const double x = p * static_cast<double>(count);
  auto rank = static_cast<std::size_t>(std::ceil(x - 1e-9 * std::max(1.0, x)));
  return std::clamp<std::size_t>(rank, 1, count);
}

std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::vector<double> resample_weights(const PyramidHistory& history,
                                     const KernelSpec& kernel,
                                     const DistanceOptions& options) {
  if (history.size() < 2) {
    fail(ErrorKind::kInsufficientHistory,
         "resampling needs at least 2 segments, got " +
             std::to_string(history.size()));
  }
  const auto distances = history.distances_from(history.size() - 1, options);
  std::vector<double> kv(distances.size());
  for (std::size_t m = 0; m < kv.size(); ++m) kv[m] = kernel.weight(distances[m]);
  return normalized_weights(kv);
}

void ResamplingPlan::validate() const {
  if (draws == 0) fail(ErrorKind::kConfig, "resample count B must be >= 1");
  if (!(alpha > 0.0 && alpha < 0.5)) {
    fail(ErrorKind::kConfig, "alpha must lie in (0, 0.5), got " + std::to_string(alpha));
  }
  if (weights.empty()) fail(ErrorKind::kConfig, "resampling weights are empty");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0)) {
      fail(ErrorKind::kConfig, "resampling weight outside [0, 1]: " + std::to_string(w));
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightSumTolerance) {
    fail(ErrorKind::kConfig, "resampling weights sum to " + std::to_string(total));
  }
}

double counter_uniform(std::uint64_t seed, std::uint64_t index) noexcept {
  const std::uint64_t state = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

std::vector<std::size_t> draw_pseudo_indices(const ResamplingPlan& plan) {
  plan.validate();
  std::vector<double> cumulative(plan.weights.size());
  std::partial_sum(plan.weights.begin(), plan.weights.end(), cumulative.begin());
  std::size_t last_positive = 0;
  for (std::size_t m = 0; m < plan.weights.size(); ++m) {
    if (plan.weights[m] > 0.0) last_positive = m;
  }

  std::vector<std::size_t> out(plan.draws);
  for (std::size_t b = 0; b < plan.draws; ++b) {
    const double u = counter_uniform(plan.seed, b);
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    out[b] = it == cumulative.end()
                 ? last_positive
                 : static_cast<std::size_t>(it - cumulative.begin());
  }
  return out;
}

std::vector<std::vector<double>> draw_pseudo_blocks(
    const ResamplingPlan& plan,
    std::span<const std::vector<double>> next_blocks) {
  if (next_blocks.size() != plan.weights.size()) {
    fail(ErrorKind::kShape, std::to_string(next_blocks.size()) +
                                " candidate blocks for " +
                                std::to_string(plan.weights.size()) + " weights");
  }
  const auto picks = draw_pseudo_indices(plan);
  std::vector<std::vector<double>> out;
  out.reserve(picks.size());
  for (std::size_t m : picks) out.push_back(next_blocks[m]);
  return out;
}

double empirical_quantile(std::vector<double> values, double p) {
  if (values.empty()) fail(ErrorKind::kShape, "quantile of an empty sample");
  const std::size_t rank = quantile_rank(p, values.size());
  auto nth = values.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(values.begin(), nth, values.end());
  return *nth;
}

double weighted_quantile(std::span<const double> atoms,
                         std::span<const double> weights, double p) {
  if (atoms.empty() || atoms.size() != weights.size()) {
    fail(ErrorKind::kShape, "weighted quantile needs matching nonempty inputs");
  }
  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });
  double cumulative = 0.0;
  for (std::size_t idx : order) {
    cumulative += weights[idx];
    if (cumulative >= p - 1e-12) return atoms[idx];
  }
  return atoms[order.back()];
}

PredictionInterval prediction_interval(
    std::span<const std::vector<double>> next_blocks,
    std::span<const double> center, const ResamplingPlan& plan,
    QuantileMode mode) {
  plan.validate();
  if (next_blocks.size() != plan.weights.size()) {
    fail(ErrorKind::kShape, std::to_string(next_blocks.size()) +
                                " candidate blocks for " +
                                std::to_string(plan.weights.size()) + " weights");
  }
  const std::size_t p = center.size();
  for (const auto& block : next_blocks) {
    if (block.size() < p) {
      fail(ErrorKind::kShape, "candidate block shorter than the forecast");
    }
  }

  PredictionInterval out;
  out.alpha = plan.alpha;
  out.lower.resize(p);
  out.upper.resize(p);

  if (mode == QuantileMode::kExact) {
    std::vector<double> atoms(next_blocks.size());
    for (std::size_t t = 0; t < p; ++t) {
      for (std::size_t m = 0; m < atoms.size(); ++m) atoms[m] = next_blocks[m][t];
      out.lower[t] = weighted_quantile(atoms, plan.weights, plan.alpha);
      out.upper[t] = weighted_quantile(atoms, plan.weights, 1.0 - plan.alpha);
    }
    return out;
  }

  out.b_used = plan.draws;
  const auto min_draws = static_cast<std::size_t>(std::ceil(1.0 / plan.alpha));
  if (plan.draws < min_draws) {
    out.warnings.push_back("B=" + std::to_string(plan.draws) +
                           " is below ceil(1/alpha)=" + std::to_string(min_draws) +
                           "; tail quantiles are poorly resolved");
  }
  const auto picks = draw_pseudo_indices(plan);
  std::vector<double> values(picks.size());
  for (std::size_t t = 0; t < p; ++t) {
    for (std::size_t b = 0; b < picks.size(); ++b) values[b] = next_blocks[picks[b]][t];
    out.lower[t] = empirical_quantile(values, plan.alpha);
    out.upper[t] = empirical_quantile(values, 1.0 - plan.alpha);
  }
  return out;
}

}  // namespace wkf
