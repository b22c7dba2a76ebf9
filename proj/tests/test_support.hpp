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

// Brute-force oracles shared by the unit tests. They recompute answers
// from the raw parent/child arrays with no index structures.

#ifndef RAMSEY_TESTS_TEST_SUPPORT_HPP_
#define RAMSEY_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ramsey/metric.hpp"
#include "ramsey/tree.hpp"

namespace ramsey::testing {

inline MetricSpace metric_of(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return MetricSpace::from_matrix(n, std::move(flat));
}

// d(i, j) = |i - j|.
inline MetricSpace path_metric(std::size_t n) {
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = i > j ? double(i - j) : double(j - i);
  }
  return MetricSpace::from_matrix(n, std::move(d));
}

inline MetricSpace test_metric(int family, std::size_t n, std::uint64_t seed) {
  switch (family % 4) {
    case 0:
      return gen_metric(MetricKind::euclidean(2), n, seed);
    case 1:
      return gen_metric(MetricKind::graph(0.1), n, seed);
    case 2:
      return gen_metric(MetricKind::uniform_matrix(), n, seed);
    default:
      return gen_metric(MetricKind::euclidean(5), n, seed);
  }
}

// Ancestors of v from v itself up to the root.
inline std::vector<VertexId> root_path(const LabeledTree& t, VertexId v) {
  std::vector<VertexId> path;
  for (; v != kNoVertex; v = t.parent(v)) path.push_back(v);
  return path;
}

inline VertexId brute_lca(const LabeledTree& t, VertexId a, VertexId b) {
  const auto pa = root_path(t, a);
  for (VertexId u : root_path(t, b)) {
    if (std::find(pa.begin(), pa.end(), u) != pa.end()) return u;
  }
  return kNoVertex;
}

inline VertexId brute_level_ancestor(const LabeledTree& t, VertexId v, int d) {
  auto path = root_path(t, v);
  std::reverse(path.begin(), path.end());
  if (d < 0 || static_cast<std::size_t>(d) >= path.size()) return kNoVertex;
  return path[static_cast<std::size_t>(d)];
}

// Leaves below v in left-to-right order (recursive DFS).
inline void collect_leaves(const LabeledTree& t, VertexId v, std::vector<VertexId>& out) {
  if (t.is_leaf(v)) {
    out.push_back(v);
    return;
  }
  for (VertexId c : t.children(v)) collect_leaves(t, c, out);
}

inline std::size_t brute_leaf_count(const LabeledTree& t, VertexId v) {
  std::vector<VertexId> leaves;
  collect_leaves(t, v, leaves);
  return leaves.size();
}

// The ancestor u of `leaf` with count(u) < l <= count(parent(u)), walking
// up one vertex at a time; the root's parent counts as infinite.
inline VertexId walk_up_size_ancestor(const LabeledTree& t, const std::vector<std::size_t>& count,
                                      VertexId leaf, std::int64_t l) {
  if (l <= 1) return kNoVertex;
  VertexId v = leaf;
  while (t.parent(v) != kNoVertex && static_cast<std::int64_t>(count[t.parent(v)]) < l) {
    v = t.parent(v);
  }
  return v;
}

// Points of t in order of the root-path scan from x: x first, then at each
// step up, the leaves of every other child of the current ancestor.
inline std::vector<PointId> root_path_permutation(const LabeledTree& t, PointId x) {
  std::vector<PointId> out{x};
  VertexId v = t.leaf_of(x);
  while (t.parent(v) != kNoVertex) {
    const VertexId p = t.parent(v);
    for (VertexId c : t.children(p)) {
      if (c == v) continue;
      std::vector<VertexId> leaves;
      collect_leaves(t, c, leaves);
      for (VertexId l : leaves) out.push_back(t.point_of(l));
    }
    v = p;
  }
  return out;
}

// rho(x, y) via explicit ancestor lists.
inline double brute_tree_distance(const LabeledTree& t, PointId x, PointId y) {
  if (x == y) return 0;
  return t.label(brute_lca(t, t.leaf_of(x), t.leaf_of(y)));
}

}  // namespace ramsey::testing

#endif  // RAMSEY_TESTS_TEST_SUPPORT_HPP_
