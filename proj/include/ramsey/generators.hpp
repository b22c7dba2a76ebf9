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

// Random trees and target functions for tests and evaluation runs.

#ifndef RAMSEY_GENERATORS_HPP_
#define RAMSEY_GENERATORS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/common.hpp"
#include "ramsey/lipschitz.hpp"
#include "ramsey/metric.hpp"
#include "ramsey/random.hpp"
#include "ramsey/tree.hpp"

namespace ramsey {

enum class TreeShape {
  kBushy,        // random splits into 2..5 parts
  kBinary,       // random splits into 2 parts
  kCaterpillar,  // every internal vertex has one subtree and 1..2 leaves
};

namespace detail {

struct Split {
  VertexId parent;
  std::vector<PointId> members;
};

// Splits `members` into `parts` nonempty groups of random sizes.
inline std::vector<std::vector<PointId>> random_groups(std::vector<PointId> members,
                                                       std::size_t parts, Rng& rng) {
  rng.shuffle(std::span<PointId>(members));
  std::vector<std::size_t> cuts;
  std::vector<std::size_t> pool(members.size() - 1);
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i + 1;
  rng.shuffle(std::span<std::size_t>(pool));
  cuts.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(parts - 1));
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(members.size());
  std::vector<std::vector<PointId>> out;
  std::size_t start = 0;
  for (std::size_t c : cuts) {
    std::vector<PointId> g(members.begin() + static_cast<std::ptrdiff_t>(start),
                           members.begin() + static_cast<std::ptrdiff_t>(c));
    std::sort(g.begin(), g.end());
    out.push_back(std::move(g));
    start = c;
  }
  return out;
}

}  // namespace detail

// A random tree over points 0..n-1 without unary vertices. Labels grow
// bottom-up: a vertex takes the largest label among its children, scaled
// up by a random factor, or kept equal with probability equal_label_rate.
// Deep trees switch to additive steps so labels stay finite.
inline LabeledTree random_tree(std::size_t n, TreeShape shape, std::uint64_t seed,
                               double equal_label_rate = 0.0) {
  if (n == 0) throw std::invalid_argument("random_tree: n must be >= 1");
  if (n == 1) return singleton_tree(0, 1);
  Rng rng(seed);
  std::vector<VertexId> parents;
  std::vector<PointId> points;
  std::vector<PointId> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<PointId>(i);
  std::vector<detail::Split> stack{{kNoVertex, std::move(all)}};
  while (!stack.empty()) {
    detail::Split job = std::move(stack.back());
    stack.pop_back();
    const auto v = static_cast<VertexId>(parents.size());
    parents.push_back(job.parent);
    if (job.members.size() == 1) {
      points.push_back(job.members[0]);
      continue;
    }
    points.push_back(kNoPoint);
    const std::size_t size = job.members.size();
    std::vector<std::vector<PointId>> groups;
    if (shape == TreeShape::kCaterpillar) {
      const std::size_t leaves = size > 2 ? 1 + rng.below(std::min<std::size_t>(2, size - 2)) : 2;
      rng.shuffle(std::span<PointId>(job.members));
      for (std::size_t i = 0; i < leaves; ++i) groups.push_back({job.members[i]});
      if (leaves < size) {
        std::vector<PointId> rest(job.members.begin() + static_cast<std::ptrdiff_t>(leaves),
                                  job.members.end());
        std::sort(rest.begin(), rest.end());
        groups.push_back(std::move(rest));
      }
    } else {
      const std::size_t parts =
          shape == TreeShape::kBushy ? std::min<std::size_t>(size, 2 + rng.below(4)) : 2;
      groups = detail::random_groups(std::move(job.members), parts, rng);
    }
    // Reverse so the first group is expanded first (preorder ids).
    for (auto g = groups.rbegin(); g != groups.rend(); ++g) stack.push_back({v, std::move(*g)});
  }
  // Children carry larger ids than their parents, so one reverse sweep
  // sees every child before its parent.
  const std::size_t count = parents.size();
  std::vector<double> labels(count, 0.0);
  std::vector<double> top_child(count, 0.0);
  for (std::size_t v = count; v-- > 0;) {
    if (points[v] == kNoPoint) {
      const double base = top_child[v];
      if (base == 0) {
        labels[v] = rng.uniform(1.0, 10.0);
      } else if (rng.bernoulli(equal_label_rate)) {
        labels[v] = base;
      } else if (base < 1e6) {
        labels[v] = base * rng.uniform(1.1, 12.0);
      } else {
        labels[v] = base + rng.uniform(1.0, 1e6);
      }
    }
    if (parents[v] != kNoVertex) top_child[parents[v]] = std::max(top_child[parents[v]], labels[v]);
  }
  return LabeledTree::build(std::move(parents), std::move(labels), std::move(points), n);
}

// Distinct random points of the integer grid [0, side)^dim under the L1
// distance.
inline MetricSpace grid_target(std::size_t count, int dim, std::int64_t side, std::uint64_t seed) {
  Rng rng(seed);
  std::set<std::vector<std::int64_t>> seen;
  std::vector<std::vector<std::int64_t>> pts;
  while (pts.size() < count) {
    std::vector<std::int64_t> p(static_cast<std::size_t>(dim));
    for (auto& c : p) c = rng.between(0, side - 1);
    if (seen.insert(p).second) pts.push_back(std::move(p));
  }
  std::vector<double> dist(count * count, 0.0);
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      std::int64_t sum = 0;
      for (int c = 0; c < dim; ++c) sum += std::abs(pts[a][c] - pts[b][c]);
      dist[a * count + b] = static_cast<double>(sum);
    }
  }
  return MetricSpace::from_matrix(count, std::move(dist), Validation::kStructural);
}

// A uniformly random map from n source points into a grid target.
inline TargetFunction random_function(std::size_t n, std::size_t target_size, std::uint64_t seed) {
  MetricSpace target = grid_target(target_size, 2, 64, derive_seed(seed, 1));
  Rng rng(derive_seed(seed, 2));
  std::vector<PointId> image(n);
  for (auto& p : image) p = static_cast<PointId>(rng.below(target_size));
  return TargetFunction::make(std::move(target), std::move(image));
}

}  // namespace ramsey

#endif  // RAMSEY_GENERATORS_HPP_
