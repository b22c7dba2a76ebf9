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

// Approximate distance oracle over a restricted Ramsey chain. For x, y with
// j = min(i_x, i_y), both points lie in X_{j-1} and one of them in Y_j, so
// the label of their lca in T_j is within [d, 128k d]. A query reads two
// levels, two leaf references, one lca and one label.

#ifndef RAMSEY_ORACLE_HPP_
#define RAMSEY_ORACLE_HPP_

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
#include "ramsey/random.hpp"
#include "ramsey/text_io.hpp"
#include "ramsey/tree_index.hpp"

namespace ramsey {

class OracleIndex {
 public:
  OracleIndex() = default;

  static OracleIndex build(const MetricSpace& m, double k, std::uint64_t seed,
                           std::size_t max_trials = kDefaultMaxTrials) {
    return from_chain(build_chain(m, k, seed, ChainMode::kRestricted, max_trials));
  }

  static OracleIndex from_chain(RamseyChain chain) {
    if (chain.mode != ChainMode::kRestricted) {
      throw std::invalid_argument("distance oracle needs a restricted chain");
    }
    OracleIndex o;
    o.chain_ = std::move(chain);
    o.trees_.reserve(o.chain_.s());
    for (const auto& level : o.chain_.levels) o.trees_.emplace_back(level.tree);
    o.refs_ = LeafRefs(o.chain_, o.trees_);
    return o;
  }

  std::size_t size() const { return chain_.n; }
  const RamseyChain& chain() const { return chain_; }
  const LeafRefs& refs() const { return refs_; }
  const TreeQueryIndex& tree(std::size_t j) const { return trees_[j - 1]; }

  template <typename Counter>
  double query(PointId x, PointId y, Counter& c) const {
    if (x >= size() || y >= size()) throw std::out_of_range("oracle query: unknown point");
    if (x == y) return 0.0;
    const std::uint32_t j = std::min(refs_.level_of(x, c), refs_.level_of(y, c));
    const TreeQueryIndex& t = trees_[j - 1];
    const VertexId a = refs_.leaf(x, j, c);
    const VertexId b = refs_.leaf(y, j, c);
    return t.label(t.lca(a, b, c), c);
  }
  double query(PointId x, PointId y) const {
    NullCounter c;
    return query(x, y, c);
  }

  void write(std::ostream& out) const {
    out << "oracle " << chain_.n << '\n';
    write_chain(chain_, out);
    refs_.write(out);
  }

  static OracleIndex read(TokenReader& in) {
    in.expect("oracle");
    const auto n = in.integer<std::size_t>("point count");
    OracleIndex o = from_chain(read_chain(in));
    if (o.size() != n) throw ValidationError("oracle header disagrees with its chain");
    LeafRefs::read_and_check(in, o.refs_);
    return o;
  }

 private:
  RamseyChain chain_;
  std::vector<TreeQueryIndex> trees_;
  LeafRefs refs_;
};

inline OracleIndex build_oracle(const MetricSpace& m, double k, std::uint64_t seed,
                                std::size_t max_trials = kDefaultMaxTrials) {
  return OracleIndex::build(m, k, seed, max_trials);
}

inline double oracle_query(const OracleIndex& o, PointId x, PointId y) { return o.query(x, y); }

struct OracleStats {
  std::size_t n = 0;
  std::size_t levels = 0;
  std::size_t storage_leaves = 0;
  std::size_t queries = 0;
  std::uint64_t max_accesses = 0;
};

// Storage and level counts plus the largest access count over `queries`
// random pairs drawn from `seed`.
inline OracleStats oracle_stats(const OracleIndex& o, std::size_t queries, std::uint64_t seed) {
  OracleStats s;
  s.n = o.size();
  s.levels = o.chain().s();
  s.storage_leaves = o.chain().storage_leaves();
  s.queries = queries;
  Rng rng(seed);
  for (std::size_t q = 0; q < queries; ++q) {
    const auto x = static_cast<PointId>(rng.below(s.n));
    const auto y = static_cast<PointId>(rng.below(s.n));
    AccessCounter c;
    o.query(x, y, c);
    s.max_accesses = std::max(s.max_accesses, c.count);
  }
  return s;
}

inline std::string oracle_to_string(const OracleIndex& o) {
  std::ostringstream os;
  o.write(os);
  return os.str();
}

inline OracleIndex oracle_from_string(const std::string& text) {
  std::istringstream is(text);
  TokenReader reader(is);
  OracleIndex o = OracleIndex::read(reader);
  if (!reader.at_end()) throw ParseError("trailing data after oracle");
  return o;
}

}  // namespace ramsey

#endif  // RAMSEY_ORACLE_HPP_
