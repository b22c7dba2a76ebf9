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

// Ultrametric extension and Ramsey chains.
//
// A chain peels X = X_0 into layers Y_1, Y_2, ...: Y_j is the padded set of
// the best partition tree sampled on X_{j-1} (alpha = 16k), so each point
// of Y_j is within factor 128k of its distance to every other point of
// X_{j-1} in that level's ultrametric. In extended mode every level's tree
// is grown to cover all of X, at factor 768k for pairs touching Y_j.

#ifndef RAMSEY_CHAIN_HPP_
#define RAMSEY_CHAIN_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramsey/common.hpp"
#include "ramsey/metric.hpp"
#include "ramsey/partition.hpp"
#include "ramsey/random.hpp"
#include "ramsey/text_io.hpp"
#include "ramsey/tree.hpp"

namespace ramsey {

// Extends a tree over Y (a subset of m's points) to all of m's points.
// Each missing point, in increasing order, hangs next to its nearest point
// y of Y (ties to the lowest index) at height d(x, y): under the lowest
// ancestor of y labelled at least d(x, y), splicing in a new vertex when
// no label equals it exactly. All labels are then tripled.
//
// If d <= rho <= alpha d on Y x Y, the result satisfies d <= rho' on X x X,
// rho' <= 6 alpha d on X x Y and rho' = 3 rho on Y x Y.
inline LabeledTree extend_ultrametric(const MetricSpace& m, const LabeledTree& t) {
  const std::size_t n = m.size();
  if (t.universe() > n) throw std::invalid_argument("extend_ultrametric: tree points outside metric");
  const PointSet ys = t.points();
  std::vector<VertexId> parent(t.parents().begin(), t.parents().end());
  std::vector<double> label(t.labels().begin(), t.labels().end());
  std::vector<PointId> point(t.vertex_points().begin(), t.vertex_points().end());
  std::vector<VertexId> leaf(n, kNoVertex);
  for (PointId y : ys) leaf[y] = t.leaf_of(y);

  auto add = [&](VertexId p, double l, PointId pt) {
    parent.push_back(p);
    label.push_back(l);
    point.push_back(pt);
    return static_cast<VertexId>(parent.size() - 1);
  };

  for (std::size_t xi = 0; xi < n; ++xi) {
    const auto x = static_cast<PointId>(xi);
    if (leaf[x] != kNoVertex) continue;
    auto row = m.row(x);
    PointId nearest = ys[0];
    for (PointId y : ys) {
      if (row[y] < row[nearest]) nearest = y;
    }
    const double d = row[nearest];
    VertexId below = leaf[nearest];
    VertexId u = parent[below];
    while (u != kNoVertex && label[u] < d) {
      below = u;
      u = parent[u];
    }
    VertexId host = u;
    if (u == kNoVertex || label[u] != d) {
      host = add(u, d, kNoPoint);
      parent[below] = host;
    }
    add(host, 0.0, x);
  }
  for (double& l : label) l *= 3;
  return LabeledTree::build(std::move(parent), std::move(label), std::move(point), n);
}

// The same tree with point ids translated through `to_global`.
inline LabeledTree relabel_points(const LabeledTree& t, std::span<const PointId> to_global,
                                  std::size_t universe) {
  std::vector<PointId> points(t.vertex_points().begin(), t.vertex_points().end());
  for (PointId& p : points) {
    if (p != kNoPoint) p = to_global[p];
  }
  return LabeledTree::build(std::vector<VertexId>(t.parents().begin(), t.parents().end()),
                            std::vector<double>(t.labels().begin(), t.labels().end()),
                            std::move(points), universe);
}

// A caterpillar over `members` centred at `center`: members sorted by
// distance from the center, with rho(a, b) = 2 max(d(a, c), d(b, c)).
// Distortion at most 2 on pairs involving the center.
inline LabeledTree star_tree(const MetricSpace& m, const PointSet& members, PointId center) {
  std::vector<PointId> order(members.begin(), members.end());
  auto row = m.row(center);
  std::stable_sort(order.begin(), order.end(), [&](PointId a, PointId b) {
    if (a == center || b == center) return a == center && b != center;
    return row[a] < row[b];
  });
  if (order.size() == 1) return singleton_tree(center, m.size());
  TreeAssembler out(m.size());
  VertexId spine = kNoVertex;
  for (std::size_t i = order.size() - 1; i >= 1; --i) {
    const VertexId next = out.add(spine, 2 * row[order[i]]);
    out.add(next, 0.0, order[i]);
    spine = next;
  }
  out.add(spine, 0.0, center);
  return std::move(out).finish();
}

enum class ChainMode { kRestricted, kExtended };

inline std::string to_string(ChainMode mode) {
  return mode == ChainMode::kRestricted ? "restricted" : "extended";
}

inline ChainMode parse_chain_mode(const std::string& text) {
  if (text == "restricted") return ChainMode::kRestricted;
  if (text == "extended") return ChainMode::kExtended;
  throw ParseError("unknown chain mode '" + text + "'");
}

struct ChainLevel {
  PointSet peeled;     // Y_j
  PointSet remaining;  // X_{j-1}
  LabeledTree tree;    // over X_{j-1} (restricted) or X (extended)
  bool fallback = false;
};

struct RamseyChain {
  ChainMode mode = ChainMode::kRestricted;
  double k = 2;
  std::size_t n = 0;
  std::vector<ChainLevel> levels;

  std::size_t s() const { return levels.size(); }

  // Distortion constant for pairs (x, y) with y in Y_j.
  double distortion_bound() const {
    return (mode == ChainMode::kRestricted ? 128.0 : 768.0) * k;
  }

  // 1-based index of the level that peels each point.
  std::vector<std::uint32_t> level_of() const {
    std::vector<std::uint32_t> out(n, 0);
    for (std::size_t j = 0; j < levels.size(); ++j) {
      for (PointId y : levels[j].peeled) out[y] = static_cast<std::uint32_t>(j + 1);
    }
    return out;
  }

  // Total leaves over all level trees.
  std::size_t storage_leaves() const {
    std::size_t total = 0;
    for (const auto& level : levels) total += level.tree.leaf_count();
    return total;
  }
};

// Peels X with alpha = 16k; level j samples with seed derive_seed(seed, j).
// A level whose best sample pads no point peels its lowest point with a
// star tree instead, so the chain always terminates.
inline RamseyChain build_chain(const MetricSpace& m, double k, std::uint64_t seed, ChainMode mode,
                               std::size_t max_trials = kDefaultMaxTrials) {
  if (!(k >= 1) || !std::isfinite(k)) throw std::invalid_argument("build_chain: k must be >= 1");
  const std::size_t n = m.size();
  RamseyChain chain;
  chain.mode = mode;
  chain.k = k;
  chain.n = n;
  PointSet remaining = PointSet::all(n);
  for (std::size_t j = 1; !remaining.empty(); ++j) {
    const MetricSpace sub = m.restrict_to(remaining.members());
    const double target = std::pow(static_cast<double>(remaining.size()), 1 - 1 / k);
    RamseySubsetResult r =
        detail::best_padded_subset(sub, 16 * k, target, derive_seed(seed, j), max_trials);
    ChainLevel level;
    level.remaining = remaining;
    if (r.subset.empty()) {
      level.fallback = true;
      level.peeled = PointSet::from_sorted({remaining[0]});
      level.tree = star_tree(m, remaining, remaining[0]);
    } else {
      std::vector<PointId> peeled;
      for (PointId local : r.subset) peeled.push_back(remaining[local]);
      level.peeled = PointSet::from_sorted(std::move(peeled));
      level.tree = relabel_points(r.tree, remaining.members(), n);
    }
    if (mode == ChainMode::kExtended) level.tree = extend_ultrametric(m, level.tree);
    remaining = remaining.minus(level.peeled);
    chain.levels.push_back(std::move(level));
  }
  return chain;
}

struct ChainMoments {
  double p = 0;
  double observed = 0;
  double bound = 0;
};

// observed = sum_{j=0}^{s-1} |X_j|^p, bound = max(k / (1 + pk), 1) n^(p + 1/k).
inline ChainMoments chain_moment_stat(const RamseyChain& chain, double p) {
  if (!(p > -1 / chain.k)) throw std::invalid_argument("chain_moment_stat: need p > -1/k");
  ChainMoments out;
  out.p = p;
  for (const auto& level : chain.levels) {
    out.observed += std::pow(static_cast<double>(level.remaining.size()), p);
  }
  out.bound = std::max(chain.k / (1 + p * chain.k), 1.0) *
              std::pow(static_cast<double>(chain.n), p + 1 / chain.k);
  return out;
}

// ---------------------------------------------------------------------------
// Text format:
//   chain <mode> <k> <n> <s>
//   then per level: "peeled <count> ids...", "remaining <count> ids...",
//   and the level tree.

namespace detail {

inline void write_point_set(std::ostream& out, const char* tag, const PointSet& s) {
  out << tag << ' ' << s.size();
  for (PointId p : s) out << ' ' << p;
  out << '\n';
}

inline PointSet read_point_set(TokenReader& in, const char* tag, std::size_t universe) {
  in.expect(tag);
  const auto count = in.integer<std::size_t>("set size");
  if (count > universe) throw ParseError("point set larger than the metric");
  std::vector<PointId> members(count);
  for (auto& p : members) {
    p = in.integer<PointId>("point");
    if (p >= universe) throw ParseError("point id out of range");
  }
  for (std::size_t i = 1; i < count; ++i) {
    if (members[i] <= members[i - 1]) throw ParseError("point set not strictly increasing");
  }
  return PointSet::from_sorted(std::move(members));
}

}  // namespace detail

inline void write_chain(const RamseyChain& chain, std::ostream& out) {
  out << "chain " << to_string(chain.mode) << ' ' << format_double(chain.k) << ' ' << chain.n
      << ' ' << chain.s() << '\n';
  for (const auto& level : chain.levels) {
    detail::write_point_set(out, "peeled", level.peeled);
    detail::write_point_set(out, "remaining", level.remaining);
    write_tree(level.tree, out);
  }
}

// Checks the layer structure: X_0 = X, X_j = X_{j-1} \ Y_j with Y_j
// nonempty, X_s empty, and each tree spanning X_{j-1} or X by mode.
inline void validate_chain_structure(const RamseyChain& chain) {
  PointSet expected = PointSet::all(chain.n);
  for (const auto& level : chain.levels) {
    if (level.remaining != expected) throw ValidationError("chain level does not continue the previous one");
    if (level.peeled.empty()) throw ValidationError("chain level peels no point");
    if (!level.peeled.is_subset_of(level.remaining)) {
      throw ValidationError("chain level peels points outside its remaining set");
    }
    if (level.tree.universe() != chain.n) throw ValidationError("chain tree has the wrong universe");
    const PointSet covered = level.tree.points();
    const PointSet& want = chain.mode == ChainMode::kRestricted ? level.remaining : PointSet::all(chain.n);
    if (covered != want) throw ValidationError("chain tree covers the wrong points");
    expected = level.remaining.minus(level.peeled);
  }
  if (!expected.empty()) throw ValidationError("chain does not exhaust the metric");
}

inline RamseyChain read_chain(TokenReader& in) {
  RamseyChain chain;
  in.expect("chain");
  chain.mode = parse_chain_mode(in.word("chain mode"));
  chain.k = in.real("k");
  if (!(chain.k >= 1)) throw ParseError("chain k must be >= 1");
  chain.n = in.integer<std::size_t>("point count");
  const auto s = in.integer<std::size_t>("level count");
  if (s > chain.n) throw ParseError("more levels than points");
  for (std::size_t j = 0; j < s; ++j) {
    ChainLevel level;
    level.peeled = detail::read_point_set(in, "peeled", chain.n);
    level.remaining = detail::read_point_set(in, "remaining", chain.n);
    level.tree = read_tree(in);
    chain.levels.push_back(std::move(level));
  }
  validate_chain_structure(chain);
  return chain;
}

inline std::string chain_to_string(const RamseyChain& chain) {
  std::ostringstream os;
  write_chain(chain, os);
  return os.str();
}

inline RamseyChain chain_from_string(const std::string& text) {
  std::istringstream is(text);
  TokenReader reader(is);
  return read_chain(reader);
}

}  // namespace ramsey

#endif  // RAMSEY_CHAIN_HPP_
