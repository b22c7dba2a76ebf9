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

// Random partitions of finite metrics and the Ramsey subsets built from
// them.
//
// A CKR partition at scale delta draws R uniformly from [delta/4, delta/2]
// and a uniform order of the points; every point joins the first center
// (in that order) within distance R. A partition tree intersects
// independent CKR partitions at scales diam * 8^-k, k = 1, 2, ..., until
// every cluster is a singleton. A point is padded when, at every level k,
// its ball of radius diam * 8^-k / alpha stays inside its own cluster; the
// padded points embed into the tree's ultrametric with distortion 8*alpha.

#ifndef RAMSEY_PARTITION_HPP_
#define RAMSEY_PARTITION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "ramsey/common.hpp"
#include "ramsey/metric.hpp"
#include "ramsey/random.hpp"
#include "ramsey/tree.hpp"

namespace ramsey {

inline constexpr std::uint32_t kNoCluster = std::numeric_limits<std::uint32_t>::max();

struct Partition {
  double delta = 0;
  // Indexed by point of the ambient metric; kNoCluster outside the subset.
  std::vector<std::uint32_t> cluster_of;
  std::size_t num_clusters = 0;

  // Clusters with members in increasing order, indexed by cluster id.
  std::vector<std::vector<PointId>> clusters() const {
    std::vector<std::vector<PointId>> out(num_clusters);
    for (std::size_t p = 0; p < cluster_of.size(); ++p) {
      if (cluster_of[p] != kNoCluster) out[cluster_of[p]].push_back(static_cast<PointId>(p));
    }
    return out;
  }

  bool same_cluster(PointId a, PointId b) const { return cluster_of[a] == cluster_of[b]; }
};

// Cluster ids follow the order in which centers claim their first point.
inline Partition ckr_partition(const MetricSpace& m, const PointSet& subset, double delta,
                               std::uint64_t seed) {
  if (!(delta > 0)) throw std::invalid_argument("ckr_partition: delta must be positive");
  if (subset.empty()) throw std::invalid_argument("ckr_partition: subset must be nonempty");
  Rng rng(seed);
  const double radius = rng.uniform(delta / 4, delta / 2);
  std::vector<PointId> order(subset.begin(), subset.end());
  rng.shuffle(std::span<PointId>(order));

  Partition p;
  p.delta = delta;
  p.cluster_of.assign(m.size(), kNoCluster);
  std::vector<PointId> open(subset.begin(), subset.end());
  for (PointId center : order) {
    if (open.empty()) break;
    auto row = m.row(center);
    bool claimed = false;
    for (std::size_t i = 0; i < open.size();) {
      if (row[open[i]] <= radius) {
        p.cluster_of[open[i]] = static_cast<std::uint32_t>(p.num_clusters);
        claimed = true;
        open[i] = open.back();
        open.pop_back();
      } else {
        ++i;
      }
    }
    if (claimed) ++p.num_clusters;
  }
  return p;
}

inline Partition ckr_partition(const MetricSpace& m, double delta, std::uint64_t seed) {
  return ckr_partition(m, PointSet::all(m.size()), delta, seed);
}

// Lower bound on Pr[ball(x, t) inside P(x)] for a CKR partition at scale delta:
// (|ball(x, delta/8)| / |ball(x, delta)|)^(16 t / delta), for 0 < t <= delta/8.
inline double padding_probability_bound(const MetricSpace& m, PointId x, double delta, double t) {
  if (!(delta > 0) || !(t > 0) || t > delta / 8) {
    throw std::invalid_argument("padding_probability_bound: need 0 < t <= delta/8");
  }
  const double inner = static_cast<double>(ball_size(m, x, delta / 8));
  const double outer = static_cast<double>(ball_size(m, x, delta));
  return std::pow(inner / outer, 16 * t / delta);
}

struct PartitionTreeSample {
  double alpha = 0;
  double diam = 0;
  // levels[0] is the single cluster X; levels.back() is all singletons.
  std::vector<Partition> levels;

  std::size_t depth() const { return levels.size() - 1; }
  // diam * 8^-k, computed exactly.
  double scale(std::size_t k) const { return std::ldexp(diam, -3 * static_cast<int>(k)); }
};

inline std::uint64_t level_seed(std::uint64_t seed, std::size_t level) {
  return derive_seed(seed, level);
}

inline PartitionTreeSample sample_partition_tree(const MetricSpace& m, double alpha,
                                                 std::uint64_t seed) {
  if (!(alpha > 1)) throw std::invalid_argument("sample_partition_tree: alpha must be > 1");
  const std::size_t n = m.size();
  PartitionTreeSample s;
  s.alpha = alpha;
  s.diam = m.diameter();
  Partition top;
  top.delta = s.diam;
  top.cluster_of.assign(n, 0);
  top.num_clusters = 1;
  s.levels.push_back(std::move(top));
  const PointSet everything = PointSet::all(n);
  std::vector<std::uint64_t> key(n);
  std::vector<std::uint32_t> ids(n);
  while (s.levels.back().num_clusters < n) {
    const std::size_t k = s.levels.size();
    const Partition fresh = ckr_partition(m, everything, s.scale(k), level_seed(seed, k));
    const Partition& prev = s.levels.back();
    // Common refinement, clusters numbered by their lowest point.
    Partition next;
    next.delta = s.scale(k);
    next.cluster_of.assign(n, kNoCluster);
    for (std::size_t x = 0; x < n; ++x) {
      key[x] = (static_cast<std::uint64_t>(prev.cluster_of[x]) << 32) | fresh.cluster_of[x];
    }
    std::iota(ids.begin(), ids.end(), 0u);
    std::stable_sort(ids.begin(), ids.end(), [&](auto a, auto b) { return key[a] < key[b]; });
    std::vector<std::uint32_t> group(n);
    std::uint32_t groups = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0 && key[ids[i]] != key[ids[i - 1]]) ++groups;
      group[ids[i]] = groups;
    }
    std::vector<std::uint32_t> rename(static_cast<std::size_t>(groups) + 1, kNoCluster);
    for (std::size_t x = 0; x < n; ++x) {
      if (rename[group[x]] == kNoCluster) {
        rename[group[x]] = static_cast<std::uint32_t>(next.num_clusters++);
      }
      next.cluster_of[x] = rename[group[x]];
    }
    s.levels.push_back(std::move(next));
  }
  return s;
}

// Points whose ball of radius diam * 8^-k / alpha lies inside their level-k
// cluster for every k >= 1. Levels past the last are all singletons, so
// there the condition reduces to the nearest neighbour lying farther than
// diam * 8^-(K+1) / alpha, which is checked explicitly.
inline PointSet padded_points(const MetricSpace& m, const PartitionTreeSample& s) {
  const std::size_t n = m.size();
  std::vector<PointId> out;
  const double beyond = s.scale(s.depth() + 1) / s.alpha;
  for (std::size_t x = 0; x < n; ++x) {
    bool padded = n == 1 || m.nearest_distance(x) > beyond;
    auto row = m.row(x);
    for (std::size_t k = 1; padded && k <= s.depth(); ++k) {
      const double r = s.scale(k) / s.alpha;
      const auto& cl = s.levels[k].cluster_of;
      for (std::size_t y = 0; y < n; ++y) {
        if (row[y] <= r && cl[y] != cl[x]) {
          padded = false;
          break;
        }
      }
    }
    if (padded) out.push_back(static_cast<PointId>(x));
  }
  return PointSet::from_sorted(std::move(out));
}

// The ultrametric rho(x, y) = diam * 8^-k with k the deepest level at
// which x and y share a cluster. Internal vertices are the distinct
// non-singleton clusters; a cluster that survives several levels unchanged
// is one vertex labelled with its deepest scale.
inline LabeledTree partition_tree_to_hst(const MetricSpace& m, const PartitionTreeSample& s) {
  const std::size_t n = m.size();
  if (n == 1) return singleton_tree(0, 1);
  std::vector<VertexId> parents;
  std::vector<double> labels;
  std::vector<VertexId> deepest(n, 0);
  parents.push_back(kNoVertex);
  labels.push_back(s.scale(0));
  std::vector<VertexId> vertex_prev{0};
  std::vector<std::size_t> size_prev{n};
  for (std::size_t k = 1; k <= s.depth(); ++k) {
    const Partition& level = s.levels[k];
    const Partition& above = s.levels[k - 1];
    std::vector<std::size_t> size(level.num_clusters, 0);
    std::vector<std::uint32_t> parent_cluster(level.num_clusters, 0);
    for (std::size_t x = 0; x < n; ++x) {
      ++size[level.cluster_of[x]];
      parent_cluster[level.cluster_of[x]] = above.cluster_of[x];
    }
    std::vector<VertexId> vertex(level.num_clusters, kNoVertex);
    for (std::size_t c = 0; c < level.num_clusters; ++c) {
      if (size[c] < 2) continue;
      const std::uint32_t pc = parent_cluster[c];
      if (size[c] == size_prev[pc]) {
        vertex[c] = vertex_prev[pc];
        labels[vertex[c]] = s.scale(k);
      } else {
        vertex[c] = static_cast<VertexId>(parents.size());
        parents.push_back(vertex_prev[pc]);
        labels.push_back(s.scale(k));
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (vertex[level.cluster_of[x]] != kNoVertex) deepest[x] = vertex[level.cluster_of[x]];
    }
    vertex_prev = std::move(vertex);
    size_prev = std::move(size);
  }
  std::vector<PointId> points(parents.size(), kNoPoint);
  for (std::size_t x = 0; x < n; ++x) {
    parents.push_back(deepest[x]);
    labels.push_back(0.0);
    points.push_back(static_cast<PointId>(x));
  }
  return LabeledTree::build(std::move(parents), std::move(labels), std::move(points), n);
}

struct RamseySubsetResult {
  PointSet subset;
  LabeledTree tree;
  double epsilon = 0;
  double alpha = 0;
  std::size_t trials_used = 0;
  // Fewer than n^(1 - epsilon) padded points in every trial.
  bool target_missed = false;
};

inline constexpr std::size_t kDefaultMaxTrials = 64;

namespace detail {

// Best of up to max_trials partition trees at padding parameter alpha,
// stopping once the padded set reaches `target`. Trial t uses seed + t.
inline RamseySubsetResult best_padded_subset(const MetricSpace& m, double alpha, double target,
                                             std::uint64_t seed, std::size_t max_trials) {
  if (max_trials == 0) throw std::invalid_argument("max_trials must be >= 1");
  RamseySubsetResult best;
  best.alpha = alpha;
  best.epsilon = 16 / alpha;
  PartitionTreeSample best_sample;
  bool have = false;
  const double goal = target * (1 - 1e-12);
  for (std::size_t t = 0; t < max_trials; ++t) {
    PartitionTreeSample s = sample_partition_tree(m, alpha, seed + t);
    PointSet y = padded_points(m, s);
    best.trials_used = t + 1;
    if (!have || y.size() > best.subset.size()) {
      best.subset = std::move(y);
      best_sample = std::move(s);
      have = true;
    }
    if (static_cast<double>(best.subset.size()) >= goal) break;
  }
  best.target_missed = static_cast<double>(best.subset.size()) < goal;
  best.tree = partition_tree_to_hst(m, best_sample);
  return best;
}

}  // namespace detail

// Samples partition trees with alpha = 16 / epsilon and keeps the one with
// the most padded points, stopping early at n^(1 - epsilon). On the
// returned subset Y: d <= rho on X x X and rho <= (128 / epsilon) d on X x Y.
inline RamseySubsetResult ramsey_subset(const MetricSpace& m, double epsilon, std::uint64_t seed,
                                        std::size_t max_trials = kDefaultMaxTrials) {
  if (!(epsilon > 0 && epsilon < 1)) {
    throw std::invalid_argument("ramsey_subset: need 0 < epsilon < 1");
  }
  RamseySubsetResult r = detail::best_padded_subset(
      m, 16 / epsilon, std::pow(static_cast<double>(m.size()), 1 - epsilon), seed, max_trials);
  r.epsilon = epsilon;
  return r;
}

// Single-linkage dendrogram of the minimum spanning tree with merge labels
// (n-1) * w: d <= rho <= (n-1) * d on all pairs.
inline LabeledTree mst_hst(const MetricSpace& m) {
  const std::size_t n = m.size();
  if (n == 1) return singleton_tree(0, 1);
  // Prim, O(n^2).
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(n, inf);
  std::vector<std::size_t> via(n, 0);
  std::vector<bool> done(n, false);
  struct Edge {
    double w;
    std::size_t a, b;
  };
  std::vector<Edge> edges;
  best[0] = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && (u == n || best[v] < best[u])) u = v;
    }
    done[u] = true;
    if (step > 0) edges.push_back({best[u], via[u], u});
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && m(u, v) < best[v]) {
        best[v] = m(u, v);
        via[v] = u;
      }
    }
  }
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.w < b.w; });
  // Union-find over components, each remembering its current tree vertex.
  std::vector<std::size_t> comp(n);
  std::iota(comp.begin(), comp.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  const std::size_t total = 2 * n - 1;
  std::vector<VertexId> parents(total, kNoVertex);
  std::vector<double> labels(total, 0.0);
  std::vector<PointId> points(total, kNoPoint);
  std::vector<VertexId> top(n);
  for (std::size_t x = 0; x < n; ++x) {
    top[x] = static_cast<VertexId>(x);
    points[x] = static_cast<PointId>(x);
  }
  const double stretch = static_cast<double>(n - 1);
  std::size_t next = n;
  for (const Edge& e : edges) {
    const std::size_t ra = find(e.a);
    const std::size_t rb = find(e.b);
    const auto v = static_cast<VertexId>(next++);
    parents[top[ra]] = v;
    parents[top[rb]] = v;
    labels[v] = stretch * e.w;
    comp[rb] = ra;
    top[ra] = v;
  }
  return LabeledTree::build(std::move(parents), std::move(labels), std::move(points), n);
}

}  // namespace ramsey

#endif  // RAMSEY_PARTITION_HPP_
