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

#include <cmath>
#include <sstream>
#include <string>

#include "ramsey/metric.hpp"
#include "test_support.hpp"

namespace ramsey {
namespace {

using testing::metric_of;
using testing::path_metric;

TEST(MetricLoad, TwoPoints) {
  MetricSpace m = metric_from_string("2\n0 1\n1 0\n");
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(m.diameter(), 1.0);
  EXPECT_EQ(m.aspect_ratio(), 1.0);
}

TEST(MetricLoad, SinglePoint) {
  MetricSpace m = metric_from_string("1\n0\n");
  EXPECT_EQ(m.size(), 1u);
  EXPECT_EQ(m.diameter(), 0.0);
  EXPECT_EQ(m.aspect_ratio(), 1.0);
}

TEST(MetricLoad, PathMetricCaches) {
  MetricSpace m = metric_from_string("4\n0 1 2 3\n1 0 1 2\n2 1 0 1\n3 2 1 0\n");
  EXPECT_EQ(m.diameter(), 3.0);
  EXPECT_EQ(m.min_positive_distance(), 1.0);
  EXPECT_EQ(m.aspect_ratio(), 3.0);
}

TEST(MetricLoad, AcceptsScientificNotation) {
  MetricSpace m = metric_from_string("2\n0e0 2.5E-1\n+2.5e-1 0\n");
  EXPECT_EQ(m(0, 1), 0.25);
}

TEST(MetricLoad, RejectsMalformedInput) {
  EXPECT_THROW(metric_from_string(""), ParseError);
  EXPECT_THROW(metric_from_string("2\n0 1\n1"), ParseError);
  EXPECT_THROW(metric_from_string("2\n0 x\n1 0\n"), ParseError);
  EXPECT_THROW(metric_from_string("2\n0 1\n1 0\n7\n"), ParseError);
  EXPECT_THROW(metric_from_string("0\n"), ParseError);
}

TEST(MetricLoad, RejectsInvalidMetrics) {
  EXPECT_THROW(metric_from_string("2\n0 1\n2 0\n"), ValidationError);    // asymmetric
  EXPECT_THROW(metric_from_string("2\n0 -1\n-1 0\n"), ValidationError);  // negative
  EXPECT_THROW(metric_from_string("2\n0 0\n0 0\n"), ValidationError);    // repeated point
  EXPECT_THROW(metric_from_string("2\n1 1\n1 0\n"), ValidationError);    // diagonal
  EXPECT_THROW(metric_from_string("3\n0 1 5\n1 0 1\n5 1 0\n"), ValidationError);  // triangle
}

TEST(MetricLoad, TriangleToleranceAbsorbsRounding) {
  // 1 + 1 = 2 exceeded by far less than 1e-9 * diam.
  EXPECT_NO_THROW(metric_from_string("3\n0 1 2.0000000001\n1 0 1\n2.0000000001 1 0\n"));
}

TEST(MetricSave, RoundTrips) {
  for (const MetricSpace& m : {metric_of({{0, 1}, {1, 0}}), metric_of({{0}}),
                               gen_metric(MetricKind::euclidean(3), 32, 5)}) {
    std::string text = metric_to_string(m);
    EXPECT_EQ(metric_from_string(text), m);
    EXPECT_EQ(metric_to_string(metric_from_string(text)), text);
  }
}

TEST(Ball, PathMetric) {
  MetricSpace m = path_metric(4);
  EXPECT_EQ(ball(m, 0, 0).members().size(), 1u);
  EXPECT_EQ(ball(m, 0, 0)[0], 0u);
  PointSet b = ball(m, 1, 1);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0], 0u);
  EXPECT_EQ(b[2], 2u);
  EXPECT_EQ(ball(m, 2, m.diameter()).size(), 4u);
}

TEST(Ball, ClosedAndMonotone) {
  MetricSpace m = gen_metric(MetricKind::euclidean(2), 40, 3);
  for (PointId x = 0; x < 40; ++x) {
    const double r = m(x, (x + 7) % 40);
    EXPECT_TRUE(ball(m, x, r).contains((x + 7) % 40));
    EXPECT_TRUE(ball(m, x, r / 2).is_subset_of(ball(m, x, r)));
    EXPECT_EQ(ball(m, x, 0).size(), 1u);
    EXPECT_EQ(ball_size(m, x, m.diameter()), 40u);
  }
}

TEST(Aspect, SmallCases) {
  MetricSpace two = metric_of({{0, 5}, {5, 0}});
  EXPECT_EQ(diameter(two), 5.0);
  EXPECT_EQ(min_positive_distance(two), 5.0);
  EXPECT_EQ(aspect_ratio(two), 1.0);
  EXPECT_EQ(aspect_ratio(path_metric(4)), 3.0);
  EXPECT_EQ(aspect_ratio(gen_metric(MetricKind::equilateral(), 3, 0)), 1.0);
}

TEST(Generators, EquilateralHasEqualDistances) {
  MetricSpace m = gen_metric(MetricKind::equilateral(), 3, 9);
  EXPECT_EQ(m(0, 1), m(0, 2));
  EXPECT_EQ(m(1, 2), m(0, 1));
}

TEST(Generators, Deterministic) {
  EXPECT_EQ(gen_metric(MetricKind::euclidean(2), 16, 7), gen_metric(MetricKind::euclidean(2), 16, 7));
  EXPECT_FALSE(gen_metric(MetricKind::euclidean(2), 16, 7) ==
               gen_metric(MetricKind::euclidean(2), 16, 8));
}

TEST(Generators, AllKindsSatisfyTriangleInequality) {
  for (const char* kind : {"euclidean:2", "euclidean:4", "graph:0.05", "graph:0.5",
                           "equilateral", "uniform_matrix"}) {
    for (std::size_t n : {1u, 2u, 32u, 128u}) {
      MetricSpace m = gen_metric(MetricKind::parse(kind), n, n * 31 + 1);
      EXPECT_LE(m.triangle_excess(), 0.0) << kind << " n=" << n;
      EXPECT_NO_THROW(metric_from_string(metric_to_string(m))) << kind;
    }
  }
}

TEST(Generators, GraphMetricIsExactShortestPath) {
  // Integer weights make every shortest-path sum exact.
  MetricSpace m = gen_metric(MetricKind::graph(0.1), 32, 4);
  for (std::size_t i = 0; i < 32; ++i) {
    for (std::size_t j = 0; j < 32; ++j) {
      EXPECT_EQ(m(i, j), std::round(m(i, j)));
      for (std::size_t k = 0; k < 32; ++k) EXPECT_LE(m(i, j), m(i, k) + m(k, j));
    }
  }
}

TEST(Generators, KindParsing) {
  EXPECT_EQ(MetricKind::parse("euclidean:3").dim, 3);
  EXPECT_EQ(MetricKind::parse("graph:0.25").edge_density, 0.25);
  EXPECT_EQ(MetricKind::parse("euclidean:3").to_string(), "euclidean:3");
  EXPECT_THROW(MetricKind::parse("sphere"), ParseError);
  EXPECT_THROW(MetricKind::parse("euclidean:0"), ParseError);
}

TEST(PointSets, Operations) {
  PointSet a = PointSet::from_unsorted({5, 1, 3});
  PointSet b = PointSet::from_sorted({1, 5});
  EXPECT_TRUE(b.is_subset_of(a));
  EXPECT_EQ(a.minus(b), PointSet::from_sorted({3}));
  EXPECT_THROW(PointSet::from_sorted({2, 2}), ValidationError);
}

TEST(Restrict, KeepsSubmatrix) {
  MetricSpace m = path_metric(6);
  std::vector<PointId> pts{1, 4, 5};
  MetricSpace sub = m.restrict_to(pts);
  EXPECT_EQ(sub.size(), 3u);
  EXPECT_EQ(sub(0, 1), 3.0);
  EXPECT_EQ(sub(1, 2), 1.0);
}

}  // namespace
}  // namespace ramsey
