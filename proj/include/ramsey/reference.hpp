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

// Slow reference answers used by the evaluation checks: explicit walks
// over the tree instead of the index structures.

#ifndef RAMSEY_REFERENCE_HPP_
#define RAMSEY_REFERENCE_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ramsey/common.hpp"
#include "ramsey/tree.hpp"

namespace ramsey::reference {

// Walks up from `leaf` while the parent has fewer than l leaves.
inline VertexId size_ancestor(const LabeledTree& t, const std::vector<std::size_t>& leaves,
                              VertexId leaf, std::int64_t l) {
  if (l <= 1) return kNoVertex;
  VertexId v = leaf;
  while (t.parent(v) != kNoVertex && static_cast<std::int64_t>(leaves[t.parent(v)]) < l) {
    v = t.parent(v);
  }
  return v;
}

// Appends the points below v in child order.
inline void append_points(const LabeledTree& t, VertexId v, std::vector<PointId>& out) {
  std::vector<VertexId> stack{v};
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    if (t.is_leaf(u)) {
      out.push_back(t.point_of(u));
      continue;
    }
    auto kids = t.children(u);
    for (auto c = kids.rbegin(); c != kids.rend(); ++c) stack.push_back(*c);
  }
}

// x, then for each ancestor on the way to the root, the points of its
// other children in order.
inline std::vector<PointId> ranking_permutation(const LabeledTree& t, PointId x) {
  std::vector<PointId> out{x};
  VertexId v = t.checked_leaf(x);
  while (t.parent(v) != kNoVertex) {
    const VertexId p = t.parent(v);
    for (VertexId c : t.children(p)) {
      if (c != v) append_points(t, c, out);
    }
    v = p;
  }
  return out;
}

}  // namespace ramsey::reference

#endif  // RAMSEY_REFERENCE_HPP_
