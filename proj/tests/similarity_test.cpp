// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wkforecast Authors

#include "wkf/similarity.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "wkf/error.hpp"

namespace wkf {
namespace {

TEST(ScaleDistance, Examples) {
  const std::vector<double> a{1, 0}, zero{0, 0}, b{3, 4};
  EXPECT_EQ(scale_distance(a, a), 0.0);
  EXPECT_EQ(scale_distance(a, zero), 1.0);
  EXPECT_EQ(scale_distance(b, zero), 5.0);
}

TEST(ScaleDistance, LengthMismatch) {
  const std::vector<double> a{1, 0}, b{1, 0, 0};
  try {
    scale_distance(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kShape);
  }
}

TEST(CombinedDistance, IdentityIsZero) {
  std::mt19937_64 rng(1);
  const auto p = forward_dwt(oracle::random_vector(rng, 32), 0, FilterId::kSym6Interp);
  EXPECT_EQ(combined_distance(p, p), 0.0);
}

TEST(CombinedDistance, SingleScaleUnitDifference) {
  const auto base = forward_dwt(std::vector<double>(16, 2.0), 0, FilterId::kDD2);
  for (int j = 0; j < 4; ++j) {
    auto other = base;
    other.detail(j)[0] += 1.0;
    EXPECT_DOUBLE_EQ(combined_distance(base, other), std::ldexp(1.0, -j)) << "scale " << j;
  }
}

TEST(CombinedDistance, MatchesNaiveWeightedSum) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = oracle::random_vector(rng, 64);
    const auto y = oracle::random_vector(rng, 64);
    const auto px = forward_dwt(x, 1, FilterId::kDD6);
    const auto py = forward_dwt(y, 1, FilterId::kDD6);
    const double expected = oracle::naive_distance(oracle::naive_dwt(x, 1, 3),
                                                   oracle::naive_dwt(y, 1, 3), 1, 1, 5);
    EXPECT_NEAR(combined_distance(px, py), expected, 1e-12);
  }
}

TEST(CombinedDistance, ScaleTruncation) {
  auto a = forward_dwt(std::vector<double>(16, 0.0), 0, FilterId::kDD2);
  auto b = a;
  b.detail(3)[2] = 8.0;  // finest scale
  b.detail(1)[0] = 2.0;
  EXPECT_DOUBLE_EQ(combined_distance(a, b), 1.0 + 1.0);
  DistanceOptions coarse_only{ScaleRange{0, 2}, false};
  EXPECT_DOUBLE_EQ(combined_distance(a, b, coarse_only), 1.0);
}

TEST(CombinedDistance, OptionalCoarseTerm) {
  const auto a = forward_dwt(std::vector<double>(8, 1.0), 0, FilterId::kDD2);
  const auto b = forward_dwt(std::vector<double>(8, 4.0), 0, FilterId::kDD2);
  EXPECT_EQ(combined_distance(a, b), 0.0);
  EXPECT_DOUBLE_EQ(combined_distance(a, b, {std::nullopt, true}), 3.0);
}

TEST(CombinedDistance, ShiftInvariantForConstantsReproducingFilters) {
  std::mt19937_64 rng(3);
  for (auto id : {FilterId::kDD2, FilterId::kDD6, FilterId::kSym6Interp}) {
    auto x = oracle::random_vector(rng, 32);
    auto y = oracle::random_vector(rng, 32);
    const double before =
        combined_distance(forward_dwt(x, 0, id), forward_dwt(y, 0, id));
    for (auto& v : x) v += 7.5;
    for (auto& v : y) v += 7.5;
    const double after = combined_distance(forward_dwt(x, 0, id), forward_dwt(y, 0, id));
    EXPECT_NEAR(before, after, 1e-12);
  }
}

TEST(CombinedDistance, Errors) {
  const auto a = forward_dwt(std::vector<double>(8, 1.0), 0, FilterId::kDD2);
  const auto b = forward_dwt(std::vector<double>(8, 1.0), 0, FilterId::kDD6);
  const auto c = forward_dwt(std::vector<double>(16, 1.0), 0, FilterId::kDD2);
  EXPECT_THROW(combined_distance(a, b), Error);
  EXPECT_THROW(combined_distance(a, c), Error);
  try {
    combined_distance(a, a, {ScaleRange{0, 3}, false});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kLevel);
  }
}

}  // namespace
}  // namespace wkf
