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

// Approximate proximity ranking over an extended Ramsey chain. Point x is
// ranked by the tree T_{i_x}: position 1 is x itself, followed by the
// leaves of the sibling subtree at each step up the root path, each
// subtree in leaf order. Trees are binarized and their children sorted by
// size, so the sibling holding position i is found with one size-ancestor
// query, and the inverse needs one lca.

#ifndef RAMSEY_RANKING_HPP_
#define RAMSEY_RANKING_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramsey/chain.hpp"
#include "ramsey/common.hpp"
#include "ramsey/leaf_refs.hpp"
#include "ramsey/metric.hpp"
#include "ramsey/size_ancestor.hpp"
#include "ramsey/text_io.hpp"
#include "ramsey/tree.hpp"
#include "ramsey/tree_index.hpp"

namespace ramsey {

// Binary, no unary vertices, larger child first.
inline LabeledTree prepare_for_ranking(const LabeledTree& t) { return sort_children(binarize(t)); }

class RankingIndex {
 public:
  RankingIndex() = default;

  static RankingIndex build(const MetricSpace& m, double k, std::uint64_t seed,
                            std::size_t max_trials = kDefaultMaxTrials) {
    RamseyChain chain = build_chain(m, k, seed, ChainMode::kExtended, max_trials);
    for (auto& level : chain.levels) level.tree = prepare_for_ranking(level.tree);
    return from_chain(std::move(chain));
  }

  // `chain` must be extended with prepared trees.
  static RankingIndex from_chain(RamseyChain chain) {
    if (chain.mode != ChainMode::kExtended) {
      throw std::invalid_argument("ranking index needs an extended chain");
    }
    RankingIndex r;
    r.chain_ = std::move(chain);
    for (const auto& level : r.chain_.levels) {
      if (!is_binary(level.tree) || !children_sorted_by_size(level.tree)) {
        throw ValidationError("ranking trees must be binary with children sorted by size");
      }
      r.trees_.emplace_back(level.tree);
    }
    for (const auto& t : r.trees_) r.size_ancestors_.push_back(SizeAncestorIndex::full(t));
    r.refs_ = LeafRefs(r.chain_, r.trees_);
    return r;
  }

  std::size_t size() const { return chain_.n; }
  const RamseyChain& chain() const { return chain_; }
  const LeafRefs& refs() const { return refs_; }
  const TreeQueryIndex& tree(std::size_t j) const { return trees_[j - 1]; }

  // pi_x(i) for 1 <= i <= n.
  template <typename Counter>
  PointId access(PointId x, std::int64_t i, Counter& c) const {
    if (x >= size()) throw std::out_of_range("rank access: unknown point");
    if (i < 1 || i > static_cast<std::int64_t>(size())) {
      throw std::out_of_range("rank access: position out of range");
    }
    if (i == 1) return x;
    const std::uint32_t j = refs_.level_of(x, c);
    const TreeQueryIndex& t = trees_[j - 1];
    const VertexId leaf = refs_.leaf(x, j, c);
    const VertexId v = size_ancestors_[j - 1].query(t, leaf, i, c);
    const auto kids = t.tree().children(t.parent(v));
    const VertexId w = kids[0] == v ? kids[1] : kids[0];
    c.tick(3);
    const std::int64_t pos = t.left(w) + (i - t.leaves_below(v)) - 1;
    return t.tree().point_of(t.leaf_at(static_cast<std::int32_t>(pos)));
  }
  PointId access(PointId x, std::int64_t i) const {
    NullCounter c;
    return access(x, i, c);
  }

  // The position of u in pi_x.
  template <typename Counter>
  std::int64_t rank_of(PointId x, PointId u, Counter& c) const {
    if (x >= size() || u >= size()) throw std::out_of_range("rank_of: unknown point");
    if (x == u) return 1;
    const std::uint32_t j = refs_.level_of(x, c);
    const TreeQueryIndex& t = trees_[j - 1];
    const VertexId a = refs_.leaf(x, j, c);
    const VertexId b = t.tree().leaf_of(u);
    const VertexId top = t.lca(a, b, c);
    const VertexId v = t.level_ancestor(a, t.depth(top) + 1, c);
    const auto kids = t.tree().children(top);
    const VertexId w = kids[0] == v ? kids[1] : kids[0];
    c.tick(3);
    return t.leaves_below(v) + (t.left(b) - t.left(w)) + 1;
  }
  std::int64_t rank_of(PointId x, PointId u) const {
    NullCounter c;
    return rank_of(x, u, c);
  }

  void write(std::ostream& out) const {
    out << "ranking " << chain_.n << '\n';
    write_chain(chain_, out);
    refs_.write(out);
  }

  static RankingIndex read(TokenReader& in) {
    in.expect("ranking");
    const auto n = in.integer<std::size_t>("point count");
    RankingIndex r = from_chain(read_chain(in));
    if (r.size() != n) throw ValidationError("ranking header disagrees with its chain");
    LeafRefs::read_and_check(in, r.refs_);
    return r;
  }

 private:
  RamseyChain chain_;
  std::vector<TreeQueryIndex> trees_;
  std::vector<SizeAncestorIndex> size_ancestors_;
  LeafRefs refs_;
};

inline RankingIndex build_ranking(const MetricSpace& m, double k, std::uint64_t seed,
                                  std::size_t max_trials = kDefaultMaxTrials) {
  return RankingIndex::build(m, k, seed, max_trials);
}

inline PointId rank_access(const RankingIndex& r, PointId x, std::int64_t i) {
  return r.access(x, i);
}

inline std::int64_t rank_of(const RankingIndex& r, PointId x, PointId u) {
  return r.rank_of(x, u);
}

struct RankingQuality {
  // Largest d(x, pi(i)) / d(x, pi(j)) over i < j.
  double max_ratio = 0;
  double bound = 0;
  bool bijective = true;
};

// Exhaustive scan of every permutation: bijectivity and the largest
// distance inversion ratio (via a running prefix maximum).
inline RankingQuality ranking_quality(const RankingIndex& r, const MetricSpace& m) {
  RankingQuality q;
  q.bound = r.chain().distortion_bound();
  const std::size_t n = r.size();
  std::vector<char> seen(n);
  for (std::size_t xi = 0; xi < n; ++xi) {
    const auto x = static_cast<PointId>(xi);
    std::fill(seen.begin(), seen.end(), 0);
    double prefix = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      const PointId p = r.access(x, static_cast<std::int64_t>(i));
      if (seen[p]) q.bijective = false;
      seen[p] = 1;
      const double d = m(x, p);
      if (i > 1) q.max_ratio = std::max(q.max_ratio, prefix / d);
      prefix = std::max(prefix, d);
    }
  }
  return q;
}

inline std::string ranking_to_string(const RankingIndex& r) {
  std::ostringstream os;
  r.write(os);
  return os.str();
}

inline RankingIndex ranking_from_string(const std::string& text) {
  std::istringstream is(text);
  TokenReader reader(is);
  RankingIndex r = RankingIndex::read(reader);
  if (!reader.at_end()) throw ParseError("trailing data after ranking index");
  return r;
}

}  // namespace ramsey

#endif  // RAMSEY_RANKING_HPP_
