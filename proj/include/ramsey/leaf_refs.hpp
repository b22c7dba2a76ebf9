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

// Per-point references into the trees of a chain: level_of[x] is the level
// i_x that peels x, and x keeps a direct reference to its leaf in each of
// the trees T_1..T_{i_x}.

#ifndef RAMSEY_LEAF_REFS_HPP_
#define RAMSEY_LEAF_REFS_HPP_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "ramsey/chain.hpp"
#include "ramsey/common.hpp"
#include "ramsey/text_io.hpp"
#include "ramsey/tree_index.hpp"

namespace ramsey {

class LeafRefs {
 public:
  LeafRefs() = default;

  LeafRefs(const RamseyChain& chain, std::span<const TreeQueryIndex> trees) {
    level_of_ = chain.level_of();
    begin_.assign(chain.n + 1, 0);
    for (std::size_t x = 0; x < chain.n; ++x) begin_[x + 1] = begin_[x] + level_of_[x];
    refs_.resize(begin_[chain.n]);
    for (std::size_t x = 0; x < chain.n; ++x) {
      for (std::uint32_t j = 1; j <= level_of_[x]; ++j) {
        refs_[begin_[x] + j - 1] = trees[j - 1].tree().checked_leaf(static_cast<PointId>(x));
      }
    }
  }

  std::size_t size() const { return level_of_.size(); }

  template <typename Counter>
  std::uint32_t level_of(PointId x, Counter& c) const {
    c.tick();
    return level_of_[x];
  }
  std::uint32_t level_of(PointId x) const { return level_of_[x]; }

  // Leaf of x in tree j (1 <= j <= level_of(x)).
  template <typename Counter>
  VertexId leaf(PointId x, std::uint32_t j, Counter& c) const {
    c.tick();
    return refs_[begin_[x] + j - 1];
  }
  VertexId leaf(PointId x, std::uint32_t j) const { return refs_[begin_[x] + j - 1]; }

  std::span<const VertexId> refs_of(PointId x) const {
    return {refs_.data() + begin_[x], level_of_[x]};
  }

  std::size_t total_refs() const { return refs_.size(); }

  friend bool operator==(const LeafRefs&, const LeafRefs&) = default;

  // "level_of i_0 ... i_{n-1}" then "leafref" followed by every reference.
  void write(std::ostream& out) const {
    out << "level_of";
    for (auto i : level_of_) out << ' ' << i;
    out << "\nleafref";
    for (auto v : refs_) out << ' ' << v;
    out << '\n';
  }

  // Reads the stored arrays and checks them against `expected`, which is
  // rebuilt from the chain.
  static void read_and_check(TokenReader& in, const LeafRefs& expected) {
    in.expect("level_of");
    for (std::size_t x = 0; x < expected.level_of_.size(); ++x) {
      if (in.integer<std::uint32_t>("level") != expected.level_of_[x]) {
        throw ValidationError("stored level_of disagrees with the chain");
      }
    }
    in.expect("leafref");
    for (VertexId v : expected.refs_) {
      if (in.integer<VertexId>("leaf reference") != v) {
        throw ValidationError("stored leaf reference disagrees with the chain trees");
      }
    }
  }

 private:
  std::vector<std::uint32_t> level_of_;
  std::vector<std::size_t> begin_;
  std::vector<VertexId> refs_;
};

}  // namespace ramsey

#endif  // RAMSEY_LEAF_REFS_HPP_
