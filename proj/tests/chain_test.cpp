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
#include <vector>

#include "ramsey/chain.hpp"
#include "test_support.hpp"

namespace ramsey {
namespace {

using testing::metric_of;
using testing::test_metric;

constexpr PointId N = kNoPoint;
constexpr VertexId R = kNoVertex;

TEST(Extend, HandExample) {
  // d(a,b) = 2, d(a,c) = 1, d(b,c) = 2; Y = {a, b} with rho(a,b) = 2.
  MetricSpace m = metric_of({{0, 2, 1}, {2, 0, 2}, {1, 2, 0}});
  LabeledTree t = build_tree({R, 0, 0}, {2, 0, 0}, {N, 0, 1}, 3);
  LabeledTree e = extend_ultrametric(m, t);
  EXPECT_EQ(tree_distance(e, 0, 1), 6.0);
  EXPECT_EQ(tree_distance(e, 0, 2), 3.0);
  EXPECT_EQ(tree_distance(e, 1, 2), 6.0);
}

TEST(Extend, FullSubsetTriplesLabels) {
  MetricSpace m = test_metric(0, 20, 3);
  LabeledTree t = mst_hst(m);
  LabeledTree e = extend_ultrametric(m, t);
  for (PointId x = 0; x < 20; ++x) {
    for (PointId y = 0; y < 20; ++y) EXPECT_EQ(tree_distance(e, x, y), 3 * tree_distance(t, x, y));
  }
}

TEST(Extend, EqualLabelAttachesWithoutSplice) {
  // Nearest point 0 at distance 2 equals the root label: no new vertex.
  MetricSpace m = metric_of({{0, 2, 2}, {2, 0, 3}, {2, 3, 0}});
  LabeledTree t = build_tree({R, 0, 0}, {2, 0, 0}, {N, 0, 1}, 3);
  LabeledTree e = extend_ultrametric(m, t);
  EXPECT_EQ(e.vertex_count(), 4u);
  EXPECT_EQ(tree_distance(e, 2, 1), 6.0);
}

TEST(Extend, NewRootWhenFartherThanEverything) {
  MetricSpace m = metric_of({{0, 1, 5}, {1, 0, 5}, {5, 5, 0}});
  LabeledTree t = build_tree({R, 0, 0}, {1, 0, 0}, {N, 0, 1}, 3);
  LabeledTree e = extend_ultrametric(m, t);
  EXPECT_EQ(tree_distance(e, 2, 0), 15.0);
  EXPECT_EQ(tree_distance(e, 0, 1), 3.0);
}

TEST(Extend, RandomInstancesSatisfyBounds) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 10 + seed * 3;
    MetricSpace m = test_metric(static_cast<int>(seed), n, seed);
    Rng rng(seed);
    std::vector<PointId> ys;
    for (PointId x = 0; x < n; ++x) {
      if (rng.bernoulli(0.4)) ys.push_back(x);
    }
    if (ys.empty()) ys.push_back(0);
    const PointSet y = PointSet::from_sorted(ys);
    MetricSpace sub = m.restrict_to(y.members());
    LabeledTree t = relabel_points(mst_hst(sub), y.members(), n);
    double alpha = 1;
    for (PointId a : y) {
      for (PointId b : y) {
        if (a != b) alpha = std::max(alpha, tree_distance(t, a, b) / m(a, b));
      }
    }
    LabeledTree e = extend_ultrametric(m, t);
    EXPECT_EQ(e.points(), PointSet::all(n));
    for (PointId a = 0; a < n; ++a) {
      for (PointId b = 0; b < n; ++b) {
        const double rho = tree_distance(e, a, b);
        EXPECT_GE(rho, m(a, b));
        if (y.contains(b)) {
          EXPECT_LE(rho, 6 * alpha * m(a, b) * (1 + 1e-12));
        }
        if (y.contains(a) && y.contains(b)) {
          EXPECT_EQ(rho, 3 * tree_distance(t, a, b));
        }
        for (PointId c = 0; c < n; c += 3) {
          EXPECT_LE(rho, std::max(tree_distance(e, a, c), tree_distance(e, c, b)));
        }
      }
    }
  }
}

TEST(StarTree, DistortionTwoAroundCenter) {
  MetricSpace m = test_metric(2, 25, 8);
  const PointSet members = PointSet::from_sorted({1, 4, 7, 9, 10, 20});
  LabeledTree t = star_tree(m, members, 7);
  EXPECT_EQ(t.points(), members);
  for (PointId a : members) {
    for (PointId b : members) {
      if (a == b) continue;
      EXPECT_GE(tree_distance(t, a, b), m(a, b));
      if (b == 7) {
        EXPECT_LE(tree_distance(t, a, b), 2 * m(a, b));
      }
    }
  }
  EXPECT_EQ(star_tree(m, PointSet::from_sorted({3}), 3).vertex_count(), 1u);
}

void expect_chain_invariants(const MetricSpace& m, const RamseyChain& c) {
  EXPECT_NO_THROW(validate_chain_structure(c));
  const double bound = c.distortion_bound();
  for (const auto& level : c.levels) {
    const PointSet scope = c.mode == ChainMode::kRestricted ? level.remaining : PointSet::all(c.n);
    for (PointId x : scope) {
      for (PointId y : scope) {
        const double rho = tree_distance(level.tree, x, y);
        EXPECT_GE(rho, m(x, y) * (1 - 1e-9));
        if (level.peeled.contains(y)) {
          EXPECT_LE(rho, bound * m(x, y) * (1 + 1e-9));
        }
      }
    }
  }
}

TEST(Chain, SinglePoint) {
  for (ChainMode mode : {ChainMode::kRestricted, ChainMode::kExtended}) {
    RamseyChain c = build_chain(metric_of({{0}}), 2, 1, mode);
    ASSERT_EQ(c.s(), 1u);
    EXPECT_EQ(c.levels[0].peeled.size(), 1u);
  }
}

TEST(Chain, InvariantsBothModes) {
  for (int family = 0; family < 4; ++family) {
    MetricSpace m = test_metric(family, 60, 70 + family);
    for (double k : {1.0, 2.0, 3.0}) {
      for (ChainMode mode : {ChainMode::kRestricted, ChainMode::kExtended}) {
        RamseyChain c = build_chain(m, k, 5, mode);
        EXPECT_EQ(c.k, k);
        expect_chain_invariants(m, c);
        std::size_t total = 0;
        for (const auto& level : c.levels) total += level.peeled.size();
        EXPECT_EQ(total, 60u);
      }
    }
  }
}

TEST(Chain, LevelOfAndStorage) {
  MetricSpace m = test_metric(0, 50, 2);
  RamseyChain c = build_chain(m, 2, 3, ChainMode::kRestricted);
  auto level = c.level_of();
  std::size_t storage = 0;
  for (std::size_t j = 0; j < c.s(); ++j) {
    storage += c.levels[j].remaining.size();
    for (PointId y : c.levels[j].peeled) EXPECT_EQ(level[y], j + 1);
  }
  EXPECT_EQ(c.storage_leaves(), storage);
}

TEST(Chain, Deterministic) {
  MetricSpace m = test_metric(1, 40, 2);
  EXPECT_EQ(chain_to_string(build_chain(m, 2, 9, ChainMode::kExtended)),
            chain_to_string(build_chain(m, 2, 9, ChainMode::kExtended)));
}

TEST(Chain, SerializationRoundTrip) {
  MetricSpace m = test_metric(3, 40, 6);
  for (ChainMode mode : {ChainMode::kRestricted, ChainMode::kExtended}) {
    RamseyChain c = build_chain(m, 3, 4, mode);
    const std::string text = chain_to_string(c);
    RamseyChain back = chain_from_string(text);
    EXPECT_EQ(chain_to_string(back), text);
    EXPECT_EQ(back.mode, mode);
  }
}

TEST(Chain, RejectsCorruptSerialization) {
  EXPECT_THROW(chain_from_string("chain sideways 2 1 1\n"), ParseError);
  MetricSpace m = test_metric(0, 10, 6);
  std::string text = chain_to_string(build_chain(m, 2, 4, ChainMode::kRestricted));
  RamseyChain c = chain_from_string(text);
  // Drop the last level: the chain no longer exhausts the metric.
  if (c.s() > 1) {
    c.levels.pop_back();
    EXPECT_THROW(validate_chain_structure(c), ValidationError);
  }
}

TEST(Moments, ClosedForms) {
  MetricSpace m = test_metric(0, 64, 1);
  RamseyChain c = build_chain(m, 2, 1, ChainMode::kRestricted);
  ChainMoments p0 = chain_moment_stat(c, 0);
  EXPECT_EQ(p0.observed, double(c.s()));
  EXPECT_DOUBLE_EQ(p0.bound, 2 * std::sqrt(64.0));
  ChainMoments p1 = chain_moment_stat(c, 1);
  EXPECT_DOUBLE_EQ(p1.bound, std::pow(64.0, 1.5));
  EXPECT_EQ(p1.observed, double(c.storage_leaves()));
  EXPECT_THROW(chain_moment_stat(c, -0.5), std::invalid_argument);
  EXPECT_NO_THROW(chain_moment_stat(c, -0.49));
}

TEST(Moments, SinglePointChain) {
  RamseyChain c = build_chain(metric_of({{0}}), 3, 1, ChainMode::kRestricted);
  for (double p : {-0.3, 0.0, 1.0, 2.0}) {
    ChainMoments mo = chain_moment_stat(c, p);
    EXPECT_EQ(mo.observed, 1.0);
    EXPECT_LE(mo.observed, mo.bound);
  }
}

}  // namespace
}  // namespace ramsey
