// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#include "wkf/predictor.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support/oracles.hpp"
#include "wkf/error.hpp"

namespace wkf {
namespace {

std::vector<Segment> to_segments(const std::vector<std::vector<double>>& raw) {
  std::vector<Segment> out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out.push_back(Segment{raw[i], static_cast<int>(i + 1), 1.0});
  }
  return out;
}

std::vector<std::vector<double>> random_history(std::mt19937_64& rng, std::size_t n,
                                                std::size_t p, double scale = 1.0) {
  std::vector<std::vector<double>> h;
  for (std::size_t i = 0; i < n; ++i) h.push_back(oracle::random_vector(rng, p, scale));
  return h;
}

PredictorConfig shrunk_config(FilterId filter = FilterId::kSym6Interp) {
  PredictorConfig c;
  c.filter = filter;
  c.weighting = Weighting::kShrunk;
  return c;
}

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no wkf::Error thrown";
  return ErrorKind::kIo;
}

TEST(Kernel, DensityValues) {
  EXPECT_NEAR(kernel_eval(KernelFamily::kGaussian, 0.0), 0.3989422804014327, 1e-16);
  EXPECT_EQ(kernel_eval(KernelFamily::kLaplace, 0.0), 0.5);
  EXPECT_EQ(kernel_eval(KernelFamily::kGaussian, 1e3), 0.0);
  EXPECT_NEAR(kernel_eval(KernelFamily::kLaplace, 2.0), 0.5 * std::exp(-2.0), 1e-17);
  EXPECT_NEAR(kernel_eval(KernelFamily::kGaussian, 1.5), oracle::gaussian(1.5), 1e-16);
}

TEST(Kernel, NonIncreasingInDistance) {
  for (auto f : {KernelFamily::kGaussian, KernelFamily::kLaplace}) {
    double prev = kernel_eval(f, 0.0);
    for (double u = 0.01; u < 20.0; u += 0.01) {
      const double k = kernel_eval(f, u);
      EXPECT_LE(k, prev);
      prev = k;
    }
  }
}

TEST(Kernel, RejectsNonPositiveBandwidth) {
  EXPECT_EQ(kind_of([] { KernelSpec(KernelFamily::kGaussian, 0.0); }), ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { KernelSpec(KernelFamily::kGaussian, -1.0); }), ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { KernelSpec(KernelFamily::kLaplace, NAN); }), ErrorKind::kConfig);
  EXPECT_EQ(KernelSpec(KernelFamily::kLaplace, 2.0).weight(4.0), 0.5 * std::exp(-2.0));
}

TEST(PredictCoefficients, TwoSegmentsClosedForm) {
  std::mt19937_64 rng(21);
  const auto h = random_history(rng, 2, 8);
  const double bw = 0.7;
  const auto r = predict_coefficients(h, KernelSpec(KernelFamily::kGaussian, bw),
                                      shrunk_config(FilterId::kDD2));
  const double d = oracle::naive_distance(oracle::naive_dwt(h[1], 0, 1),
                                          oracle::naive_dwt(h[0], 0, 1), 0, 0, 2);
  const double k = oracle::gaussian(d / bw);
  const double factor = k / (0.5 + k);
  ASSERT_EQ(r.xi_pred.size(), 8u);
  for (int t = 0; t < 8; ++t) EXPECT_NEAR(r.xi_pred[t], factor * h[1][t], 1e-14);
  EXPECT_NEAR(r.effective_sample, k, 1e-15);
  EXPECT_NEAR(r.distances[0], d, 1e-13);
}

TEST(PredictCoefficients, IdenticalSegmentsShrunkClosedForm) {
  const std::vector<double> xi{3, 1, 4, 1, 5, 9, 2, 6};
  for (std::size_t n : {2u, 5u, 40u}) {
    const std::vector<std::vector<double>> h(n, xi);
    const auto r = predict_coefficients(h, KernelSpec(KernelFamily::kGaussian, 0.3),
                                        shrunk_config());
    const double k0 = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    const double dn = static_cast<double>(n);
    const double factor = (dn - 1) * k0 / (1.0 / dn + (dn - 1) * k0);
    for (std::size_t t = 0; t < xi.size(); ++t) {
      EXPECT_NEAR(r.xi_pred[t], factor * xi[t], 1e-13) << "n=" << n;
    }
  }
}

TEST(PredictCoefficients, IdenticalSegmentsNormalizedReproduceTheBlock) {
  const std::vector<double> xi{3, 1, 4, 1, 5, 9, 2, 6};
  const std::vector<std::vector<double>> h(7, xi);
  PredictorConfig c;
  const auto r = predict_coefficients(h, KernelSpec(KernelFamily::kGaussian, 0.3), c);
  for (std::size_t t = 0; t < xi.size(); ++t) EXPECT_NEAR(r.xi_pred[t], xi[t], 1e-13);
}

TEST(PredictCoefficients, MatchesBruteForceOracle) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> len(2, 32), count(2, 20);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = static_cast<std::size_t>(len(rng));
    const auto n = static_cast<std::size_t>(count(rng));
    const auto raw = random_history(rng, n, p);
    const double bw = 0.05 + 2.0 * std::uniform_real_distribution<double>()(rng);
    for (bool normalized : {false, true}) {
      PredictorConfig c;
      c.weighting = normalized ? Weighting::kNormalized : Weighting::kShrunk;
      const auto r = predict_one_ahead(to_segments(raw),
                                       KernelSpec(KernelFamily::kGaussian, bw), c);
      const auto expected = oracle::naive_forecast(raw, bw, 0, 6, normalized);
      ASSERT_EQ(r.curve.size(), p);
      for (std::size_t t = 0; t < p; ++t) {
        EXPECT_NEAR(r.curve[t], expected[t], 1e-12 * (1.0 + std::abs(expected[t])));
      }
    }
  }
}

TEST(PredictCoefficients, CurveIsReconstructionOfPredictedCoefficients) {
  std::mt19937_64 rng(23);
  const auto h = random_history(rng, 12, 16, 3.0);
  const auto r = predict_coefficients(h, KernelSpec(KernelFamily::kLaplace, 0.5), PredictorConfig{});
  ASSERT_EQ(r.curve.size(), r.xi_pred.size());
  for (std::size_t t = 0; t < r.curve.size(); ++t) {
    EXPECT_NEAR(r.curve[t], r.xi_pred[t], 1e-10 * (1.0 + std::abs(r.xi_pred[t])));
  }
}

TEST(PredictCoefficients, UnderflowShrinksTowardZero) {
  std::mt19937_64 rng(24);
  const auto h = random_history(rng, 10, 16, 50.0);
  const auto r = predict_coefficients(h, KernelSpec(KernelFamily::kGaussian, 1e-6),
                                      shrunk_config());
  EXPECT_EQ(r.effective_sample, 0.0);
  for (double v : r.xi_pred) EXPECT_EQ(v, 0.0);
  // The normalized form falls back to the plain average of the next blocks.
  const auto q = predict_coefficients(h, KernelSpec(KernelFamily::kGaussian, 1e-6),
                                      PredictorConfig{});
  for (std::size_t t = 0; t < 16; ++t) {
    double mean = 0.0;
    for (std::size_t m = 1; m < 10; ++m) mean += h[m][t] / 9.0;
    EXPECT_NEAR(q.xi_pred[t], mean, 1e-12);
  }
}

TEST(PredictCoefficients, NormalizedForecastIsConvexCombination) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    const auto h = random_history(rng, 15, 8, 2.0);
    const auto r = predict_coefficients(h, KernelSpec(KernelFamily::kGaussian, 0.2 + trial * 0.1),
                                        PredictorConfig{});
    double total = 0.0;
    for (double w : r.weights) {
      EXPECT_GE(w, 0.0);
      EXPECT_LE(w, 1.0);
      total += w;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    for (std::size_t t = 0; t < 8; ++t) {
      double lo = INFINITY, hi = -INFINITY;
      for (std::size_t m = 1; m < h.size(); ++m) {
        lo = std::min(lo, h[m][t]);
        hi = std::max(hi, h[m][t]);
      }
      EXPECT_GE(r.xi_pred[t], lo - 1e-12);
      EXPECT_LE(r.xi_pred[t], hi + 1e-12);
    }
  }
}

TEST(PredictCoefficients, MovingACandidateAwayNeverRaisesItsWeight) {
  std::mt19937_64 rng(26);
  auto h = random_history(rng, 6, 16);
  const auto base = h[2];
  const auto& query = h[5];
  double previous = INFINITY;
  for (double step = 0.0; step < 5.0; step += 0.25) {
    // Scaling the offset from the query scales every per-scale distance.
    for (std::size_t t = 0; t < 16; ++t) {
      h[2][t] = query[t] + (1.0 + step) * (base[t] - query[t]);
    }
    const auto r = predict_coefficients(h, KernelSpec(KernelFamily::kGaussian, 1.0),
                                        shrunk_config(FilterId::kDD2));
    EXPECT_LE(r.weights[2], previous + 1e-15);
    previous = r.weights[2];
  }
}

TEST(PredictCoefficients, Errors) {
  const KernelSpec k(KernelFamily::kGaussian, 1.0);
  const std::vector<std::vector<double>> one{{1, 2, 3, 4}};
  EXPECT_EQ(kind_of([&] { predict_coefficients(one, k, PredictorConfig{}); }),
            ErrorKind::kInsufficientHistory);
  const std::vector<std::vector<double>> ragged{{1, 2, 3, 4}, {1, 2}};
  EXPECT_EQ(kind_of([&] { predict_coefficients(ragged, k, PredictorConfig{}); }),
            ErrorKind::kShape);
  const auto segs = to_segments({{1, 2, 3}, {1, 2}});
  EXPECT_EQ(kind_of([&] { predict_one_ahead(segs, k, PredictorConfig{}); }),
            ErrorKind::kShape);
}

TEST(PredictOneAhead, PeriodicSeriesReproducesTheBlock) {
  const std::vector<double> block{2.5, 3.0, 1.0, -0.5, 4.0, 6.0, 2.0, 0.5, 1.5, 2.0, 3.5, 3.0};
  const std::vector<std::vector<double>> raw(5, block);
  for (double bw : {1e-8, 0.11, 1.0, 1e6}) {
    for (auto kernel : {KernelFamily::kGaussian, KernelFamily::kLaplace}) {
      PredictorConfig c;
      c.kernel = kernel;
      const auto r = predict_one_ahead(to_segments(raw), KernelSpec(kernel, bw), c);
      ASSERT_EQ(r.curve.size(), block.size());
      for (std::size_t t = 0; t < block.size(); ++t) EXPECT_NEAR(r.curve[t], block[t], 1e-8);
    }
  }
  // Cross-validated bandwidth as well.
  PredictorConfig c;
  const auto r = predict_one_ahead(to_segments(raw), c);
  for (std::size_t t = 0; t < block.size(); ++t) {
    EXPECT_NEAR(r.prediction.curve[t], block[t], 1e-8);
  }
}

TEST(PredictOneAhead, TwoSegmentsGiveShrunkCopyOfTheLast) {
  const std::vector<std::vector<double>> raw{{1, 2, 3, 4, 5, 6}, {2, 1, 0, 3, 5, 1}};
  const double bw = 0.8;
  const auto r = predict_one_ahead(to_segments(raw), KernelSpec(KernelFamily::kGaussian, bw),
                                   shrunk_config(FilterId::kDD2));
  const auto a = oracle::naive_dwt(oracle::periodic_pad(raw[1]), 0, 1);
  const auto b = oracle::naive_dwt(oracle::periodic_pad(raw[0]), 0, 1);
  const double k = oracle::gaussian(oracle::naive_distance(a, b, 0, 0, 2) / bw);
  for (std::size_t t = 0; t < 6; ++t) {
    EXPECT_NEAR(r.curve[t], k / (0.5 + k) * raw[1][t], 1e-12);
  }
}

TEST(PredictOneAhead, NormalizedForecastShiftsWithTheData) {
  std::mt19937_64 rng(27);
  const auto raw = random_history(rng, 9, 12);
  auto shifted = raw;
  const double c = 42.0;
  for (auto& s : shifted) {
    for (auto& v : s) v += c;
  }
  const KernelSpec k(KernelFamily::kGaussian, 0.6);
  const auto a = predict_one_ahead(to_segments(raw), k, PredictorConfig{});
  const auto b = predict_one_ahead(to_segments(shifted), k, PredictorConfig{});
  for (std::size_t t = 0; t < 12; ++t) EXPECT_NEAR(b.curve[t], a.curve[t] + c, 1e-9);
}

TEST(Weights, NormalizedSumsToOneAndUnderflowIsUniform) {
  const std::vector<double> zeros(9, 0.0);
  for (double w : normalized_weights(zeros)) EXPECT_DOUBLE_EQ(w, 1.0 / 9.0);
  const std::vector<double> kv{0.1, 0.3, 0.0, 0.25};
  const auto w = normalized_weights(kv);
  double total = 0.0;
  for (double x : w) total += x;
  EXPECT_NEAR(total, 1.0, 1e-15);
  EXPECT_GT(w[1], w[3]);
  EXPECT_GT(w[3], w[0]);
  EXPECT_GT(w[2], 0.0);
}

double brute_force_cv(const std::vector<std::vector<double>>& raw, double h) {
  double total = 0.0;
  const std::size_t n = raw.size();
  for (std::size_t i = 2; i < n; ++i) {
    const std::vector<std::vector<double>> past(raw.begin(), raw.begin() + i);
    const auto f = oracle::naive_forecast(past, h, 0, 6, true);
    double sq = 0.0;
    for (std::size_t t = 0; t < f.size(); ++t) sq += std::pow(raw[i][t] - f[t], 2);
    total += sq / static_cast<double>(f.size());
  }
  return total / static_cast<double>(n - 2);
}

TEST(CvBandwidth, MatchesBruteForceCriterion) {
  std::mt19937_64 rng(28);
  const auto raw = random_history(rng, 14, 12);
  const std::vector<double> grid{0.05, 0.2, 0.7, 3.0};
  const auto cv = cv_bandwidth(to_segments(raw), grid, PredictorConfig{});
  ASSERT_EQ(cv.cv_values.size(), grid.size());
  std::size_t best = 0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double expected = brute_force_cv(raw, grid[g]);
    EXPECT_NEAR(cv.cv_values[g], expected, 1e-12 * (1.0 + expected));
    if (expected < brute_force_cv(raw, grid[best])) best = g;
  }
  EXPECT_EQ(cv.best_index, best);
}

TEST(CvBandwidth, SingletonGrid) {
  std::mt19937_64 rng(29);
  const auto raw = random_history(rng, 5, 8);
  const std::vector<double> grid{0.42};
  EXPECT_EQ(cv_bandwidth(to_segments(raw), grid, PredictorConfig{}).best_bandwidth(), 0.42);
}

TEST(CvBandwidth, IdenticalSegmentsTieBreaksToSmallest) {
  const std::vector<std::vector<double>> raw(6, {1.0, 5.0, 2.0, 7.0, 3.0});
  const std::vector<double> grid{0.3, 0.1, 2.0, 0.1};
  const auto cv = cv_bandwidth(to_segments(raw), grid, PredictorConfig{});
  for (double v : cv.cv_values) EXPECT_NEAR(v, 0.0, 1e-24);
  EXPECT_EQ(cv.best_bandwidth(), 0.1);
  EXPECT_EQ(cv.best_index, 1u);
}

TEST(CvBandwidth, Errors) {
  std::mt19937_64 rng(30);
  const auto segs = to_segments(random_history(rng, 5, 8));
  EXPECT_EQ(kind_of([&] { cv_bandwidth(segs, std::vector<double>{}, PredictorConfig{}); }),
            ErrorKind::kConfig);
  EXPECT_EQ(kind_of([&] { cv_bandwidth(segs, std::vector<double>{-1.0}, PredictorConfig{}); }),
            ErrorKind::kConfig);
  const auto two = to_segments(random_history(rng, 2, 8));
  EXPECT_EQ(kind_of([&] { cv_bandwidth(two, std::vector<double>{1.0}, PredictorConfig{}); }),
            ErrorKind::kInsufficientHistory);
}

TEST(CvBandwidth, DefaultGridSpansDistanceQuantiles) {
  std::mt19937_64 rng(31);
  const auto segs = to_segments(random_history(rng, 30, 16));
  const auto history = PyramidHistory::from_segments(segs, FilterId::kSym6Interp, 0);
  const auto grid = default_bandwidth_grid(history, {});
  ASSERT_EQ(grid.size(), 32u);
  for (std::size_t g = 1; g < grid.size(); ++g) EXPECT_GT(grid[g], grid[g - 1]);
  std::vector<double> d;
  for (std::size_t i = 1; i < history.size(); ++i) {
    const auto di = history.distances_from(i, {});
    d.insert(d.end(), di.begin(), di.end());
  }
  std::sort(d.begin(), d.end());
  EXPECT_GE(grid.front(), d.front());
  EXPECT_LE(grid.back(), d.back());
  // Identical segments: every distance is zero.
  const auto flat = to_segments(std::vector<std::vector<double>>(4, {1.0, 2.0, 3.0, 4.0}));
  EXPECT_EQ(default_bandwidth_grid(PyramidHistory::from_segments(flat, FilterId::kDD2, 0), {}),
            std::vector<double>{1.0});
}

TEST(CvBandwidth, DeterministicAcrossCalls) {
  std::mt19937_64 rng(32);
  const auto segs = to_segments(random_history(rng, 25, 16));
  const auto a = predict_one_ahead(segs, PredictorConfig{});
  const auto b = predict_one_ahead(segs, PredictorConfig{});
  EXPECT_EQ(a.prediction.curve, b.prediction.curve);
  EXPECT_EQ(a.cv->cv_values, b.cv->cv_values);
}

}  // namespace
}  // namespace wkf
