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

// Lipschitz constants of maps from a finite metric into a target metric:
// exhaustive evaluation, the one-pass estimate on ultrametrics, and the
// chain-based estimate for general metrics.

#ifndef RAMSEY_LIPSCHITZ_HPP_
#define RAMSEY_LIPSCHITZ_HPP_

#include <algorithm>
#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "ramsey/chain.hpp"
#include "ramsey/common.hpp"
#include "ramsey/metric.hpp"
#include "ramsey/text_io.hpp"
#include "ramsey/tree.hpp"
#include "ramsey/tree_index.hpp"

namespace ramsey {

// A map f from source points 0..n-1 into the points of `target`.
struct TargetFunction {
  MetricSpace target;
  std::vector<PointId> image;

  static TargetFunction make(MetricSpace target, std::vector<PointId> image) {
    for (PointId p : image) {
      if (p >= target.size()) throw ValidationError("function image outside the target metric");
    }
    return {std::move(target), std::move(image)};
  }

  std::size_t size() const { return image.size(); }
  double distance(PointId x, PointId y) const { return target(image[x], image[y]); }
};

struct LipEstimate {
  double value = 0;
  // The true constant is at most value * lower_factor.
  double lower_factor = 1;
};

// max d_Y(f x, f y) / d(x, y) over pairs; 0 when n < 2.
inline double brute_lipschitz(const MetricSpace& m, const TargetFunction& f) {
  if (f.size() != m.size()) throw std::invalid_argument("function and metric sizes differ");
  double best = 0;
  for (std::size_t x = 0; x < m.size(); ++x) {
    for (std::size_t y = x + 1; y < m.size(); ++y) {
      best = std::max(best, f.distance(static_cast<PointId>(x), static_cast<PointId>(y)) / m(x, y));
    }
  }
  return best;
}

// The same over the points of a tree, measured in its ultrametric.
inline double brute_lipschitz(const LabeledTree& t, const TargetFunction& f) {
  const TreeQueryIndex idx(t);
  const PointSet pts = t.points();
  double best = 0;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      const double rho = idx.label(idx.lca(t.leaf_of(pts[a]), t.leaf_of(pts[b])));
      best = std::max(best, f.distance(pts[a], pts[b]) / rho);
    }
  }
  return best;
}

// One pass over a 4-HST version of t: at every internal vertex the
// representative (leftmost leaf) of the first child is compared with the
// representative of each other child. Each ratio divides by the
// representatives' distance in t itself, so the value never exceeds the
// Lipschitz constant with respect to t.
inline LipEstimate lip_um(const LabeledTree& t, const TargetFunction& f) {
  LipEstimate out;
  out.lower_factor = 16;
  const TreeQueryIndex original(t);
  const TreeQueryIndex hst(to_k_hst(t, 4));
  const LabeledTree& h = hst.tree();
  for (std::size_t vi = 0; vi < h.vertex_count(); ++vi) {
    auto kids = h.children(static_cast<VertexId>(vi));
    if (kids.size() < 2) continue;
    const PointId first = h.point_of(hst.rep_leaf(kids[0]));
    const VertexId first_leaf = t.leaf_of(first);
    for (std::size_t i = 1; i < kids.size(); ++i) {
      const PointId other = h.point_of(hst.rep_leaf(kids[i]));
      const double rho = original.label(original.lca(first_leaf, t.leaf_of(other)));
      out.value = std::max(out.value, f.distance(first, other) / rho);
    }
  }
  return out;
}

// Maximum of lip_um over the level trees of a restricted chain.
inline LipEstimate lip_estimate(const RamseyChain& chain, const TargetFunction& f) {
  if (chain.mode != ChainMode::kRestricted) {
    throw std::invalid_argument("lip_estimate needs a restricted chain");
  }
  if (f.size() != chain.n) throw std::invalid_argument("function and chain sizes differ");
  LipEstimate out;
  out.lower_factor = 16 * chain.distortion_bound();
  for (const auto& level : chain.levels) {
    out.value = std::max(out.value, lip_um(level.tree, f).value);
  }
  return out;
}

// Function file: "n n'" then the n image indices.
inline TargetFunction load_function(std::istream& in, MetricSpace target) {
  TokenReader reader(in);
  const auto n = reader.integer<std::size_t>("source size");
  const auto n_target = reader.integer<std::size_t>("target size");
  if (n_target != target.size()) throw ParseError("function file disagrees with the target metric size");
  std::vector<PointId> image(n);
  for (auto& p : image) {
    p = reader.integer<PointId>("image index");
    if (p >= n_target) throw ParseError("image index out of range");
  }
  if (!reader.at_end()) throw ParseError("trailing data after function");
  return TargetFunction::make(std::move(target), std::move(image));
}

inline void save_function(const TargetFunction& f, std::ostream& out) {
  out << f.size() << ' ' << f.target.size() << '\n';
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i > 0) out << ' ';
    out << f.image[i];
  }
  out << '\n';
}

}  // namespace ramsey

#endif  // RAMSEY_LIPSCHITZ_HPP_
