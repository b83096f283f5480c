// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#include <benchmark/benchmark.h>

#include <random>

#include "wkf/evaluation.hpp"
#include "wkf/intervals.hpp"
#include "wkf/predictor.hpp"
#include "wkf/wavelet.hpp"

namespace {

std::vector<double> noise(std::size_t n) {
  std::mt19937_64 rng(n);
  std::normal_distribution<double> g;
  std::vector<double> x(n);
  for (auto& v : x) v = g(rng);
  return x;
}

std::vector<wkf::Segment> synthetic_segments(std::size_t n, std::size_t period) {
  wkf::SyntheticSpec spec;
  spec.segments = n;
  spec.period = period;
  spec.seed = 1;
  return wkf::segment_series(wkf::gen_synthetic(spec), period).segments;
}

void BM_ForwardDwt(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(wkf::forward_dwt(x, 0, wkf::FilterId::kSym6Interp));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ForwardDwt)->RangeMultiplier(4)->Range(16, 4096);

void BM_InverseDwt(benchmark::State& state) {
  const auto p = wkf::forward_dwt(noise(static_cast<std::size_t>(state.range(0))), 0,
                                  wkf::FilterId::kSym6Interp);
  for (auto _ : state) benchmark::DoNotOptimize(wkf::inverse_dwt(p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_InverseDwt)->RangeMultiplier(4)->Range(16, 4096);

void BM_PredictFixedBandwidth(benchmark::State& state) {
  const auto segs = synthetic_segments(static_cast<std::size_t>(state.range(0)), 16);
  const wkf::PredictorConfig config;
  const wkf::KernelSpec kernel(wkf::KernelFamily::kGaussian, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(wkf::predict_one_ahead(segs, kernel, config));
}
BENCHMARK(BM_PredictFixedBandwidth)->Arg(36)->Arg(100)->Arg(400);

void BM_CrossValidation(benchmark::State& state) {
  const auto segs = synthetic_segments(static_cast<std::size_t>(state.range(0)), 16);
  const auto history = wkf::PyramidHistory::from_segments(segs, wkf::FilterId::kSym6Interp, 0);
  const wkf::PredictorConfig config;
  const auto grid = wkf::default_bandwidth_grid(history, config.distance);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wkf::cv_bandwidth(history, grid, config, 16));
  }
}
BENCHMARK(BM_CrossValidation)->Arg(36)->Arg(100)->Arg(200);

void BM_PredictionInterval(benchmark::State& state) {
  const auto segs = synthetic_segments(100, 16);
  const auto history = wkf::PyramidHistory::from_segments(segs, wkf::FilterId::kSym6Interp, 0);
  wkf::ResamplingPlan plan;
  plan.draws = static_cast<std::size_t>(state.range(0));
  plan.weights = wkf::resample_weights(history, wkf::KernelSpec(wkf::KernelFamily::kGaussian, 1.0));
  std::vector<std::vector<double>> next;
  for (std::size_t m = 1; m < history.size(); ++m) next.push_back(history.coefficients(m));
  const std::vector<double> center(16, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(wkf::prediction_interval(next, center, plan));
}
BENCHMARK(BM_PredictionInterval)->Arg(500)->Arg(5000)->Arg(50000);

}  // namespace

BENCHMARK_MAIN();
