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

// Size-ancestor queries: for a leaf x and a threshold l, the ancestor u of
// x with leaves(u) < l <= leaves(parent(u)), where the root's parent has
// infinitely many leaves.
//
// The coarse structure stores, for every window size i*m and window index
// j, the at most two minimal vertices whose leaf interval has length at
// least i*m and meets positions ((j-1)im, jim]. The least ancestor of x
// with at least i*m leaves is then the deepest lca(x, v) over the window
// containing x that still has enough leaves. The full structure uses
// m = floor(log2(n) / 4) and resolves the remaining l mod m leaves with a
// per-vertex bitmask of nearby ancestor sizes.
//
// Both require a tree without unary vertices whose child lists are sorted
// by non-increasing leaf count (see prepare_for_size_ancestor).

#ifndef RAMSEY_SIZE_ANCESTOR_HPP_
#define RAMSEY_SIZE_ANCESTOR_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ramsey/common.hpp"
#include "ramsey/tree.hpp"
#include "ramsey/tree_index.hpp"

namespace ramsey {

inline LabeledTree prepare_for_size_ancestor(const LabeledTree& t) {
  return sort_children(eliminate_unary(t));
}

inline int default_granularity(std::size_t leaves) {
  const int lg = leaves > 0 ? static_cast<int>(std::bit_width(leaves)) - 1 : 0;
  return std::max(1, lg / 4);
}

class SizeAncestorIndex {
 public:
  SizeAncestorIndex() = default;

  // Coarse structure with window granularity m.
  static SizeAncestorIndex coarse(const TreeQueryIndex& idx, int m) {
    if (m < 1) throw std::invalid_argument("size ancestor granularity must be >= 1");
    check_prepared(idx.tree());
    SizeAncestorIndex s;
    s.m_ = m;
    s.n_ = static_cast<std::int64_t>(idx.leaf_count());
    s.build_windows(idx);
    return s;
  }

  // Full structure: coarse windows at m = default_granularity(n) plus the
  // ancestor-size masks.
  static SizeAncestorIndex full(const TreeQueryIndex& idx) {
    SizeAncestorIndex s = coarse(idx, default_granularity(idx.leaf_count()));
    s.build_masks(idx);
    return s;
  }

  int granularity() const { return m_; }

  // Number of nonempty window slots, summed over all window sizes.
  std::size_t window_entries() const {
    std::size_t count = 0;
    for (VertexId v : slots_) count += v != kNoVertex;
    return count;
  }

  // The stored vertices of window j at size i*m (at most two).
  std::vector<VertexId> window(std::int64_t i, std::int64_t j) const {
    std::vector<VertexId> out;
    const std::size_t base = 2 * (offset_[i] + static_cast<std::size_t>(j - 1));
    for (int s = 0; s < 2; ++s) {
      if (slots_[base + s] != kNoVertex) out.push_back(slots_[base + s]);
    }
    return out;
  }

  // Least ancestor of `leaf` with at least q*m leaves (1 <= q); kNoVertex
  // when even the root has fewer.
  template <typename Counter = NullCounter>
  VertexId least_ancestor_with(const TreeQueryIndex& idx, VertexId leaf, std::int64_t q,
                               Counter& c) const {
    if (q > n_ / m_) return kNoVertex;
    const std::int64_t need = q * m_;
    const std::int64_t j = (idx.left(leaf) + need - 1) / need;
    const std::size_t base = 2 * (offset_[q] + static_cast<std::size_t>(j - 1));
    c.tick(2);
    VertexId best = kNoVertex;
    for (int s = 0; s < 2; ++s) {
      const VertexId v = slots_[base + s];
      if (v == kNoVertex) continue;
      const VertexId w = idx.lca(leaf, v, c);
      c.tick(2);
      if (idx.leaves_below(w) >= need && (best == kNoVertex || idx.depth(w) > idx.depth(best))) {
        best = w;
      }
    }
    return best;
  }

  // Coarse query: the ancestor u with leaves(u) < l*m <= leaves(parent(u)).
  // kNoVertex when l*m <= 1.
  template <typename Counter = NullCounter>
  VertexId coarse_query(const TreeQueryIndex& idx, VertexId leaf, std::int64_t l,
                        Counter& c) const {
    if (l * m_ <= 1) return kNoVertex;
    const VertexId g = least_ancestor_with(idx, leaf, l, c);
    if (g == kNoVertex) return idx.root();
    return idx.level_ancestor(leaf, idx.depth(g) + 1, c);
  }
  VertexId coarse_query(const TreeQueryIndex& idx, VertexId leaf, std::int64_t l) const {
    NullCounter c;
    return coarse_query(idx, leaf, l, c);
  }

  // Full query: the ancestor u with leaves(u) < l <= leaves(parent(u)).
  // kNoVertex when l <= 1.
  template <typename Counter = NullCounter>
  VertexId query(const TreeQueryIndex& idx, VertexId leaf, std::int64_t l, Counter& c) const {
    if (mask_.empty()) throw std::logic_error("size ancestor query needs the full structure");
    if (l <= 1) return kNoVertex;
    const std::int64_t q = l / m_;
    VertexId u = leaf;
    if (q > 0) {
      u = least_ancestor_with(idx, leaf, q, c);
      if (u == kNoVertex) return idx.root();
    }
    const std::int64_t size = idx.leaves_below(u);
    c.tick();
    if (size >= l) return idx.level_ancestor(leaf, idx.depth(u) + 1, c);
    const int below = enum_[static_cast<std::size_t>(mask_[u]) * static_cast<std::size_t>(m_) +
                            static_cast<std::size_t>(l - size)];
    c.tick(2);
    if (idx.depth(u) - below + 1 <= 0) return idx.root();
    return idx.level_ancestor(u, idx.depth(u) - below + 1, c);
  }
  VertexId query(const TreeQueryIndex& idx, VertexId leaf, std::int64_t l) const {
    NullCounter c;
    return query(idx, leaf, l, c);
  }

 private:
  static void check_prepared(const LabeledTree& t) {
    if (has_unary_vertex(t)) {
      throw std::invalid_argument("size ancestor index needs a tree without unary vertices");
    }
    if (!children_sorted_by_size(t)) {
      throw std::invalid_argument("size ancestor index needs children sorted by leaf count");
    }
  }

  static std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

  void add(std::int64_t i, std::int64_t j, VertexId v) {
    const std::size_t base = 2 * (offset_[i] + static_cast<std::size_t>(j - 1));
    if (slots_[base] == kNoVertex) {
      slots_[base] = v;
    } else if (slots_[base + 1] == kNoVertex) {
      slots_[base + 1] = v;
    } else {
      throw std::logic_error("size ancestor window holds more than two vertices");
    }
  }

  void build_windows(const TreeQueryIndex& idx) {
    const std::int64_t n = n_;
    const std::int64_t m = m_;
    const std::int64_t max_i = n / m;
    offset_.assign(static_cast<std::size_t>(max_i) + 2, 0);
    for (std::int64_t i = 1; i <= max_i; ++i) {
      offset_[i + 1] = offset_[i] + static_cast<std::size_t>(ceil_div(n, i * m));
    }
    slots_.assign(2 * offset_[max_i + 1], kNoVertex);

    const LabeledTree& t = idx.tree();
    for (std::size_t vi = 0; vi < t.vertex_count(); ++vi) {
      const auto u = static_cast<VertexId>(vi);
      const std::int64_t a_u = idx.left(u);
      const std::int64_t b_u = idx.right(u);
      const std::int64_t size_u = idx.leaves_below(u);
      auto kids = t.children(u);
      const std::int64_t first_size = kids.empty() ? 0 : idx.leaves_below(kids[0]);
      // Window sizes no child reaches: u is minimal on every window it meets.
      for (std::int64_t i = size_u / m; i > first_size / m; --i) {
        for (std::int64_t j = ceil_div(a_u, i * m); j <= ceil_div(b_u, i * m); ++j) add(i, j, u);
      }
      // Window sizes reached by the first h children only: u is minimal on
      // windows lying right of those children.
      for (std::size_t h = 0; h + 1 < kids.size(); ++h) {
        const std::int64_t size_h = idx.leaves_below(kids[h]);
        const std::int64_t size_next = idx.leaves_below(kids[h + 1]);
        const std::int64_t b_h = idx.right(kids[h]);
        for (std::int64_t i = size_h / m; i > size_next / m; --i) {
          for (std::int64_t j = ceil_div(b_h, i * m) + 1; j <= ceil_div(b_u, i * m); ++j) {
            add(i, j, u);
          }
        }
      }
    }
  }

  void build_masks(const TreeQueryIndex& idx) {
    const int m = m_;
    const std::uint32_t full = m >= 32 ? 0xffffffffu : ((1u << m) - 1u);
    const LabeledTree& t = idx.tree();
    mask_.assign(t.vertex_count(), 0);
    std::vector<VertexId> stack{t.root()};
    mask_[t.root()] = 1;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (VertexId u : t.children(v)) {
        const std::int64_t gap = idx.leaves_below(v) - idx.leaves_below(u);
        if (gap >= m) {
          mask_[u] = 1;
        } else {
          mask_[u] = ((mask_[v] << gap) + 1u) & full;
        }
        stack.push_back(u);
      }
    }
    const std::size_t sets = std::size_t{1} << m;
    enum_.assign(sets * static_cast<std::size_t>(m), 0);
    for (std::size_t a = 0; a < sets; ++a) {
      for (int i = 0; i < m; ++i) {
        enum_[a * static_cast<std::size_t>(m) + static_cast<std::size_t>(i)] =
            std::popcount(static_cast<std::uint32_t>(a) & ((1u << i) - 1u));
      }
    }
  }

  int m_ = 1;
  std::int64_t n_ = 0;
  std::vector<std::size_t> offset_;
  std::vector<VertexId> slots_;
  std::vector<std::uint32_t> mask_;
  std::vector<int> enum_;
};

}  // namespace ramsey

#endif  // RAMSEY_SIZE_ANCESTOR_HPP_
