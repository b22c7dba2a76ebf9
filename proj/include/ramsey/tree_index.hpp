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

// Query index over a LabeledTree: O(1) LCA through an Euler tour and a
// sparse range-minimum table, level ancestors through power-of-two jump
// tables (O(log n) per query), and the left-to-right leaf order with the
// leaf interval [left(v), right(v)] of every vertex. Leaf positions are
// 1-based.
//
// Query methods take an optional counter so callers can measure how many
// table entries a query touches.

#ifndef RAMSEY_TREE_INDEX_HPP_
#define RAMSEY_TREE_INDEX_HPP_

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "ramsey/common.hpp"
#include "ramsey/tree.hpp"

namespace ramsey {

struct NullCounter {
  void tick(int = 1) {}
};

struct AccessCounter {
  std::uint64_t count = 0;
  void tick(int n = 1) { count += static_cast<std::uint64_t>(n); }
};

class TreeQueryIndex {
 public:
  TreeQueryIndex() = default;

  explicit TreeQueryIndex(LabeledTree tree) : tree_(std::move(tree)) {
    const std::size_t n = tree_.vertex_count();
    leaves_below_.assign(n, 0);
    left_.assign(n, 0);
    right_.assign(n, 0);
    first_.assign(n, 0);
    euler_.reserve(2 * n);
    leaf_at_.assign(1, kNoVertex);  // position 0 is unused

    // Iterative DFS producing the Euler tour and the leaf order.
    struct Frame {
      VertexId v;
      std::size_t next_child;
    };
    std::vector<Frame> stack{{tree_.root(), 0}};
    visit(tree_.root());
    while (!stack.empty()) {
      Frame& top = stack.back();
      const VertexId v = top.v;
      auto kids = tree_.children(v);
      if (top.next_child < kids.size()) {
        const VertexId c = kids[top.next_child++];
        stack.push_back({c, 0});
        visit(c);
        continue;
      }
      right_[v] = static_cast<std::int32_t>(leaf_at_.size() - 1);
      leaves_below_[v] = right_[v] - left_[v] + 1;
      stack.pop_back();
      if (!stack.empty()) euler_.push_back(pack(stack.back().v));
    }
    build_sparse();
    build_jumps();
  }

  const LabeledTree& tree() const { return tree_; }
  std::size_t vertex_count() const { return tree_.vertex_count(); }
  std::size_t leaf_count() const { return tree_.leaf_count(); }
  VertexId root() const { return tree_.root(); }
  VertexId parent(VertexId v) const { return tree_.parent(v); }
  int depth(VertexId v) const { return tree_.depth(v); }

  template <typename Counter = NullCounter>
  double label(VertexId v, Counter& c) const {
    c.tick();
    return tree_.label(v);
  }
  double label(VertexId v) const { return tree_.label(v); }

  // Number of leaves below v.
  std::int32_t leaves_below(VertexId v) const { return leaves_below_[v]; }
  // Leftmost / rightmost leaf position below v.
  std::int32_t left(VertexId v) const { return left_[v]; }
  std::int32_t right(VertexId v) const { return right_[v]; }
  // Leaf vertex at 1-based position pos.
  VertexId leaf_at(std::int32_t pos) const { return leaf_at_[pos]; }
  // Position of point p in the leaf order.
  std::int32_t position_of(PointId p) const { return left_[tree_.checked_leaf(p)]; }
  // Leftmost descendant leaf, used as a fixed representative.
  VertexId rep_leaf(VertexId v) const { return leaf_at_[left_[v]]; }

  template <typename Counter = NullCounter>
  VertexId lca(VertexId u, VertexId v, Counter& c) const {
    if (u == v) return u;
    std::size_t a = first_[u];
    std::size_t b = first_[v];
    c.tick(2);
    if (a > b) std::swap(a, b);
    const int level = static_cast<int>(std::bit_width(b - a + 1)) - 1;
    const auto& row = sparse_[static_cast<std::size_t>(level)];
    const std::uint64_t lo = row[a];
    const std::uint64_t hi = row[b + 1 - (std::size_t{1} << level)];
    c.tick(2);
    return unpack(std::min(lo, hi));
  }
  VertexId lca(VertexId u, VertexId v) const {
    NullCounter c;
    return lca(u, v, c);
  }

  // Ancestor of u at edge depth d, or kNoVertex if d is out of range.
  template <typename Counter = NullCounter>
  VertexId level_ancestor(VertexId u, int d, Counter& c) const {
    const int du = tree_.depth(u);
    if (d < 0 || d > du) return kNoVertex;
    unsigned up = static_cast<unsigned>(du - d);
    for (std::size_t j = 0; up != 0; ++j, up >>= 1) {
      if (up & 1u) {
        u = jump_[j][u];
        c.tick();
      }
    }
    return u;
  }
  VertexId level_ancestor(VertexId u, int d) const {
    NullCounter c;
    return level_ancestor(u, d, c);
  }

 private:
  static constexpr int kDepthShift = 32;

  std::uint64_t pack(VertexId v) const {
    return (static_cast<std::uint64_t>(tree_.depth(v)) << kDepthShift) |
           static_cast<std::uint32_t>(v);
  }
  static VertexId unpack(std::uint64_t key) {
    return static_cast<VertexId>(key & 0xffffffffu);
  }

  void visit(VertexId v) {
    first_[v] = euler_.size();
    euler_.push_back(pack(v));
    if (tree_.is_leaf(v)) leaf_at_.push_back(v);
    left_[v] = static_cast<std::int32_t>(tree_.is_leaf(v) ? leaf_at_.size() - 1 : leaf_at_.size());
  }

  void build_sparse() {
    const std::size_t len = euler_.size();
    sparse_.clear();
    sparse_.push_back(euler_);
    for (std::size_t w = 1; 2 * w <= len; w *= 2) {
      const auto& prev = sparse_.back();
      std::vector<std::uint64_t> next(len - 2 * w + 1);
      for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::min(prev[i], prev[i + w]);
      sparse_.push_back(std::move(next));
    }
  }

  void build_jumps() {
    const std::size_t n = tree_.vertex_count();
    int max_depth = 0;
    for (std::size_t v = 0; v < n; ++v) max_depth = std::max(max_depth, tree_.depth(static_cast<VertexId>(v)));
    jump_.clear();
    std::vector<VertexId> step(n);
    for (std::size_t v = 0; v < n; ++v) {
      const VertexId p = tree_.parent(static_cast<VertexId>(v));
      step[v] = p == kNoVertex ? static_cast<VertexId>(v) : p;
    }
    jump_.push_back(step);
    for (int span = 2; span <= max_depth; span *= 2) {
      const auto& prev = jump_.back();
      std::vector<VertexId> next(n);
      for (std::size_t v = 0; v < n; ++v) next[v] = prev[prev[v]];
      jump_.push_back(std::move(next));
    }
  }

  LabeledTree tree_;
  std::vector<std::int32_t> leaves_below_;
  std::vector<std::int32_t> left_;
  std::vector<std::int32_t> right_;
  std::vector<VertexId> leaf_at_;
  std::vector<std::size_t> first_;
  std::vector<std::uint64_t> euler_;
  std::vector<std::vector<std::uint64_t>> sparse_;
  std::vector<std::vector<VertexId>> jump_;
};

}  // namespace ramsey

#endif  // RAMSEY_TREE_INDEX_HPP_
