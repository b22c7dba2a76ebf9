// Copyright 2026 The Ramsey Proximity Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sstream>
#include <vector>

#include "ramsey/generators.hpp"
#include "ramsey/lipschitz.hpp"
#include "test_support.hpp"

namespace ramsey {
namespace {

using testing::metric_of;
using testing::test_metric;

constexpr PointId N = kNoPoint;
constexpr VertexId R = kNoVertex;

TargetFunction constant_function(std::size_t n) {
  return TargetFunction::make(metric_of({{0, 1}, {1, 0}}), std::vector<PointId>(n, 1));
}

TEST(BruteLipschitz, SmallCases) {
  MetricSpace m = test_metric(0, 20, 1);
  EXPECT_EQ(brute_lipschitz(m, constant_function(20)), 0.0);
  std::vector<PointId> id(20);
  for (PointId i = 0; i < 20; ++i) id[i] = i;
  EXPECT_DOUBLE_EQ(brute_lipschitz(m, TargetFunction::make(m, id)), 1.0);
  MetricSpace two = metric_of({{0, 2}, {2, 0}});
  MetricSpace far = metric_of({{0, 10}, {10, 0}});
  EXPECT_EQ(brute_lipschitz(two, TargetFunction::make(far, {0, 1})), 5.0);
  EXPECT_EQ(brute_lipschitz(metric_of({{0}}), constant_function(1)), 0.0);
}

TEST(TargetFunction, RejectsOutOfRangeImage) {
  EXPECT_THROW(TargetFunction::make(metric_of({{0}}), {0, 1}), ValidationError);
}

TEST(LipUm, TwoLeafTree) {
  LabeledTree t = build_tree({R, 0, 0}, {2, 0, 0}, {N, 0, 1}, 2);
  TargetFunction f = TargetFunction::make(metric_of({{0, 10}, {10, 0}}), {0, 1});
  LipEstimate a = lip_um(t, f);
  EXPECT_EQ(a.value, 5.0);
  EXPECT_EQ(a.lower_factor, 16.0);
  EXPECT_EQ(brute_lipschitz(t, f), 5.0);
}

TEST(LipUm, ConstantFunction) {
  EXPECT_EQ(lip_um(random_tree(30, TreeShape::kBushy, 1), constant_function(30)).value, 0.0);
}

TEST(LipUm, SandwichOnRandomUltrametrics) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 2 + seed * 4;
    LabeledTree t = random_tree(n, static_cast<TreeShape>(seed % 3), seed, 0.3);
    TargetFunction f = random_function(n, 1 + seed % 40, seed);
    const double exact = brute_lipschitz(t, f);
    const double a = lip_um(t, f).value;
    EXPECT_LE(a, exact * (1 + 1e-12));
    EXPECT_GE(a * 16, exact * (1 - 1e-12));
  }
}

TEST(LipEstimate, ConstantAndTwoPoints) {
  MetricSpace m = test_metric(1, 25, 2);
  RamseyChain c = build_chain(m, 2, 1, ChainMode::kRestricted);
  EXPECT_EQ(lip_estimate(c, constant_function(25)).value, 0.0);
  EXPECT_EQ(lip_estimate(c, constant_function(25)).lower_factor, 2048 * 2);

  MetricSpace two = metric_of({{0, 3}, {3, 0}});
  TargetFunction f = TargetFunction::make(metric_of({{0, 12}, {12, 0}}), {0, 1});
  LipEstimate a = lip_estimate(build_chain(two, 2, 1, ChainMode::kRestricted), f);
  EXPECT_LE(a.value, 4.0);
  EXPECT_GE(a.value * a.lower_factor, 4.0);
}

TEST(LipEstimate, SandwichOnRandomMetrics) {
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    for (double k : {2.0, 3.0}) {
      const std::size_t n = 10 + seed * 7;
      MetricSpace m = test_metric(static_cast<int>(seed), n, seed);
      TargetFunction f = random_function(n, 30, seed + 1000);
      RamseyChain c = build_chain(m, k, seed, ChainMode::kRestricted);
      const double exact = brute_lipschitz(m, f);
      const LipEstimate a = lip_estimate(c, f);
      EXPECT_LE(a.value, exact * (1 + 1e-9));
      EXPECT_GE(a.value * a.lower_factor, exact * (1 - 1e-9));
    }
  }
}

TEST(LipEstimate, RejectsExtendedChain) {
  MetricSpace m = test_metric(0, 5, 1);
  EXPECT_THROW(lip_estimate(build_chain(m, 2, 1, ChainMode::kExtended), constant_function(5)),
               std::invalid_argument);
}

TEST(FunctionFile, RoundTrip) {
  TargetFunction f = random_function(12, 7, 3);
  std::ostringstream out;
  save_function(f, out);
  std::istringstream in(out.str());
  TargetFunction back = load_function(in, f.target);
  EXPECT_EQ(back.image, f.image);
  std::istringstream bad("2 7\n0 9\n");
  EXPECT_THROW(load_function(bad, f.target), ParseError);
}

}  // namespace
}  // namespace ramsey
