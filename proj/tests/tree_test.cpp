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

#include <algorithm>
#include <cmath>
#include <vector>

#include "ramsey/generators.hpp"
#include "ramsey/tree.hpp"
#include "test_support.hpp"

namespace ramsey {
namespace {

constexpr PointId N = kNoPoint;
constexpr VertexId R = kNoVertex;

// root(4) -> a(1){0,1}, b(1){2,3}
LabeledTree four_point_tree() {
  return build_tree({R, 0, 0, 1, 1, 2, 2}, {4, 1, 1, 0, 0, 0, 0}, {N, N, N, 0, 1, 2, 3}, 4);
}

std::vector<double> all_distances(const LabeledTree& t) {
  std::vector<double> out;
  const PointSet pts = t.points();
  for (PointId x : pts) {
    for (PointId y : pts) out.push_back(tree_distance(t, x, y));
  }
  return out;
}

TEST(BuildTree, TwoLeaves) {
  LabeledTree t = build_tree({R, 0, 0}, {1, 0, 0}, {N, 0, 1}, 2);
  EXPECT_EQ(t.leaf_count(), 2u);
  EXPECT_EQ(tree_distance(t, 0, 1), 1.0);
  EXPECT_EQ(tree_distance(t, 1, 1), 0.0);
}

TEST(BuildTree, FourPointHst) {
  LabeledTree t = four_point_tree();
  EXPECT_EQ(tree_distance(t, 0, 1), 1.0);
  EXPECT_EQ(tree_distance(t, 2, 3), 1.0);
  EXPECT_EQ(tree_distance(t, 0, 2), 4.0);
  EXPECT_EQ(tree_distance(t, 3, 1), 4.0);
}

TEST(BuildTree, RejectsBadInput) {
  EXPECT_THROW(build_tree({R, 0, 0}, {1, 2, 0}, {N, N, 1}, 2), ValidationError);  // inversion
  EXPECT_THROW(build_tree({1, 0}, {1, 0}, {N, 0}, 1), ValidationError);          // cycle
  EXPECT_THROW(build_tree({R, 0, 0}, {1, 0, 0}, {N, 0, N}, 2), ValidationError);  // leaf w/o point
  EXPECT_THROW(build_tree({R, 0, 0}, {1, 0, 0}, {N, 0, 0}, 2), ValidationError);  // duplicate
  EXPECT_THROW(build_tree({R, 0, 0}, {1, 0, 0}, {N, 0, 5}, 2), ValidationError);  // universe
  EXPECT_THROW(build_tree({R, 0}, {0, 0}, {N, 0}, 1), ValidationError);           // zero label
  EXPECT_THROW(build_tree({R, R}, {0, 0}, {0, 1}, 2), ValidationError);           // two roots
  EXPECT_THROW(build_tree({R, 0, 0}, {1, 0.5, 0}, {N, 0, 1}, 2), ValidationError);  // leaf label
}

TEST(TreeDistance, UnknownPointThrows) {
  EXPECT_THROW(tree_distance(four_point_tree(), 0, 9), std::out_of_range);
}

TEST(TreeDistance, UltrametricInequalityOnRandomTrees) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    LabeledTree t = random_tree(40, seed % 2 ? TreeShape::kBushy : TreeShape::kCaterpillar, seed, 0.3);
    for (PointId x = 0; x < 40; ++x) {
      for (PointId y = 0; y < 40; ++y) {
        const double dxy = tree_distance(t, x, y);
        EXPECT_EQ(dxy, testing::brute_tree_distance(t, x, y));
        EXPECT_EQ(dxy, tree_distance(t, y, x));
        for (PointId z = 0; z < 40; ++z) {
          EXPECT_LE(dxy, std::max(tree_distance(t, x, z), tree_distance(t, z, y)));
        }
      }
    }
  }
}

TEST(Serialization, RoundTripIsExact) {
  LabeledTree t = random_tree(50, TreeShape::kBushy, 3, 0.2);
  const std::string text = tree_to_string(t);
  LabeledTree back = tree_from_string(text);
  EXPECT_EQ(back, t);
  EXPECT_EQ(tree_to_string(back), text);
  // Labels survive bit-exactly.
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    EXPECT_EQ(back.label(static_cast<VertexId>(v)), t.label(static_cast<VertexId>(v)));
  }
}

TEST(Serialization, SingleLeaf) {
  LabeledTree t = singleton_tree(3, 5);
  EXPECT_EQ(tree_from_string(tree_to_string(t)), t);
}

TEST(Serialization, RejectsMalformed) {
  EXPECT_THROW(tree_from_string("tree 2 2\nparents -1 0\nlabels 1\n"), ParseError);
  EXPECT_THROW(tree_from_string("tree 3 2\nparents -1 0 0\nlabels 1 0 0\npoints -1 0 x\n"), ParseError);
  EXPECT_THROW(tree_from_string("tree 3 2\nparents -1 0 0\nlabels 1 2 0\npoints -1 -1 1\n"),
               ValidationError);
}

TEST(Binarize, AlreadyBinaryIsUnchanged) {
  LabeledTree t = four_point_tree();
  LabeledTree b = binarize(t);
  EXPECT_TRUE(is_binary(b));
  EXPECT_EQ(all_distances(b), all_distances(t));
  EXPECT_EQ(b.vertex_count(), t.vertex_count());
}

TEST(Binarize, ThreeLeafStarBecomesLeftComb) {
  LabeledTree t = build_tree({R, 0, 0, 0}, {1, 0, 0, 0}, {N, 0, 1, 2}, 3);
  LabeledTree b = binarize(t);
  EXPECT_TRUE(is_binary(b));
  EXPECT_EQ(b.vertex_count(), 5u);
  // Root's first child is the comb vertex holding points 0 and 1.
  const VertexId comb = b.children(b.root())[0];
  EXPECT_FALSE(b.is_leaf(comb));
  EXPECT_EQ(b.label(comb), 1.0);
  EXPECT_EQ(b.point_of(b.children(comb)[0]), 0u);
  EXPECT_EQ(b.point_of(b.children(comb)[1]), 1u);
  EXPECT_EQ(b.point_of(b.children(b.root())[1]), 2u);
  for (PointId x = 0; x < 3; ++x) {
    for (PointId y = 0; y < 3; ++y) EXPECT_EQ(tree_distance(b, x, y), x == y ? 0.0 : 1.0);
  }
}

TEST(Binarize, ContractsUnaryChains) {
  LabeledTree t = build_tree({R, 0, 1, 0}, {5, 3, 0, 0}, {N, N, 0, 1}, 2);
  LabeledTree b = binarize(t);
  EXPECT_EQ(b.vertex_count(), 3u);
  EXPECT_EQ(tree_distance(b, 0, 1), 5.0);
  EXPECT_FALSE(has_unary_vertex(b));
}

TEST(Binarize, PreservesDistancesOnRandomTrees) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    LabeledTree t = random_tree(60, TreeShape::kBushy, seed, 0.25);
    LabeledTree b = binarize(t);
    EXPECT_TRUE(is_binary(b));
    EXPECT_EQ(b.points(), t.points());
    EXPECT_EQ(all_distances(b), all_distances(t));
  }
}

TEST(SortChildren, OrdersBySizeAndPreservesDistances) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    LabeledTree t = random_tree(80, seed % 2 ? TreeShape::kBushy : TreeShape::kBinary, seed);
    LabeledTree s = sort_children(t);
    EXPECT_TRUE(children_sorted_by_size(s));
    EXPECT_EQ(all_distances(s), all_distances(t));
    EXPECT_EQ(sort_children(s), s);
    for (std::size_t v = 0; v < s.vertex_count(); ++v) {
      auto kids = s.children(static_cast<VertexId>(v));
      for (std::size_t i = 1; i < kids.size(); ++i) {
        EXPECT_GE(testing::brute_leaf_count(s, kids[i - 1]), testing::brute_leaf_count(s, kids[i]));
      }
    }
  }
}

TEST(EliminateUnary, KeepsDistances) {
  LabeledTree t = build_tree({R, 0, 1, 2, 2, 0}, {8, 4, 2, 0, 0, 0}, {N, N, N, 0, 1, 2}, 3);
  LabeledTree e = eliminate_unary(t);
  EXPECT_FALSE(has_unary_vertex(e));
  EXPECT_EQ(all_distances(e), all_distances(t));
}

TEST(KHst, KOneOnlyContractsEqualLabels) {
  LabeledTree t = build_tree({R, 0, 0, 1, 1, 2, 2}, {3, 3, 2, 0, 0, 0, 0}, {N, N, N, 0, 1, 2, 3}, 4);
  LabeledTree h = to_k_hst(t, 1);
  EXPECT_EQ(h.vertex_count(), 6u);
  EXPECT_EQ(all_distances(h), all_distances(t));
}

TEST(KHst, TwoLeafTreeKeepsPowerLabels) {
  LabeledTree t = build_tree({R, 0, 0}, {16, 0, 0}, {N, 0, 1}, 2);
  EXPECT_EQ(tree_distance(to_k_hst(t, 4), 0, 1), 16.0);
  EXPECT_EQ(tree_distance(to_k_hst(t, 2), 0, 1), 16.0);
}

TEST(KHst, RejectsSmallK) {
  EXPECT_THROW(to_k_hst(four_point_tree(), 0.5), std::invalid_argument);
}

TEST(KHst, RandomUltrametricsStayWithinFactorK) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    for (double k : {2.0, 4.0}) {
      LabeledTree t = random_tree(120, seed % 2 ? TreeShape::kBushy : TreeShape::kCaterpillar, seed, 0.2);
      LabeledTree h = to_k_hst(t, k);
      EXPECT_EQ(h.points(), t.points());
      for (PointId x = 0; x < 120; ++x) {
        for (PointId y = x + 1; y < 120; ++y) {
          const double ratio = tree_distance(h, x, y) / tree_distance(t, x, y);
          EXPECT_GE(ratio, 1.0);
          EXPECT_LT(ratio, k);
        }
      }
      // Exact k-HST: every internal child label is its parent's divided by k.
      for (std::size_t v = 0; v < h.vertex_count(); ++v) {
        const auto vid = static_cast<VertexId>(v);
        if (h.is_leaf(vid) || h.parent(vid) == R) continue;
        EXPECT_DOUBLE_EQ(h.label(vid) * k, h.label(h.parent(vid)));
      }
    }
  }
}

}  // namespace
}  // namespace ramsey
