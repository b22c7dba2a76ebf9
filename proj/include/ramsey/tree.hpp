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

// Vertex-labelled rooted trees (HSTs) representing ultrametrics:
// rho(x, y) = label(lca(x, y)), with labels non-increasing towards the
// leaves.
//
// Children are always listed in increasing vertex-id order, so reordering
// children means renumbering vertices. All tree transformations below
// renumber their output in preorder.

#ifndef RAMSEY_TREE_HPP_
#define RAMSEY_TREE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/common.hpp"
#include "ramsey/metric.hpp"
#include "ramsey/text_io.hpp"

namespace ramsey {

class LabeledTree {
 public:
  LabeledTree() = default;

  // parents[v] is kNoVertex for the root; labels[v] is 0 for leaves and
  // positive for internal vertices; point_of_vertex[v] is the point at a
  // leaf and kNoPoint elsewhere. Points must be < universe.
  static LabeledTree build(std::vector<VertexId> parents, std::vector<double> labels,
                           std::vector<PointId> point_of_vertex, std::size_t universe) {
    LabeledTree t;
    t.parent_ = std::move(parents);
    t.label_ = std::move(labels);
    t.point_ = std::move(point_of_vertex);
    t.universe_ = universe;
    t.validate_and_index();
    return t;
  }

  std::size_t vertex_count() const { return parent_.size(); }
  std::size_t leaf_count() const { return leaf_count_; }
  // Size of the point index space; leaf_of() accepts any point below it.
  std::size_t universe() const { return universe_; }
  VertexId root() const { return root_; }

  VertexId parent(VertexId v) const { return parent_[v]; }
  double label(VertexId v) const { return label_[v]; }
  int depth(VertexId v) const { return depth_[v]; }
  PointId point_of(VertexId v) const { return point_[v]; }
  bool is_leaf(VertexId v) const { return child_begin_[v] == child_begin_[v + 1]; }

  std::span<const VertexId> children(VertexId v) const {
    return {children_.data() + child_begin_[v],
            static_cast<std::size_t>(child_begin_[v + 1] - child_begin_[v])};
  }

  // kNoVertex when p is not a point of this tree.
  VertexId leaf_of(PointId p) const {
    return p < leaf_of_.size() ? leaf_of_[p] : kNoVertex;
  }

  bool contains(PointId p) const { return leaf_of(p) != kNoVertex; }

  PointSet points() const {
    std::vector<PointId> pts;
    pts.reserve(leaf_count_);
    for (PointId p = 0; p < leaf_of_.size(); ++p) {
      if (leaf_of_[p] != kNoVertex) pts.push_back(p);
    }
    return PointSet::from_sorted(std::move(pts));
  }

  std::span<const VertexId> parents() const { return parent_; }
  std::span<const double> labels() const { return label_; }
  std::span<const PointId> vertex_points() const { return point_; }

  // Walk-up LCA, O(depth). Fast queries live in TreeQueryIndex.
  VertexId naive_lca(VertexId u, VertexId v) const {
    while (depth_[u] > depth_[v]) u = parent_[u];
    while (depth_[v] > depth_[u]) v = parent_[v];
    while (u != v) {
      u = parent_[u];
      v = parent_[v];
    }
    return u;
  }

  VertexId checked_leaf(PointId p) const {
    VertexId v = leaf_of(p);
    if (v == kNoVertex) {
      throw std::out_of_range("point " + std::to_string(p) + " is not a leaf of this tree");
    }
    return v;
  }

  friend bool operator==(const LabeledTree& a, const LabeledTree& b) {
    return a.universe_ == b.universe_ && a.parent_ == b.parent_ && a.label_ == b.label_ &&
           a.point_ == b.point_;
  }

 private:
  void validate_and_index() {
    const std::size_t v_count = parent_.size();
    if (v_count == 0) throw ValidationError("tree must have at least one vertex");
    if (label_.size() != v_count || point_.size() != v_count) {
      throw ValidationError("parent/label/point arrays differ in length");
    }
    root_ = kNoVertex;
    std::vector<VertexId> degree(v_count + 1, 0);
    for (std::size_t v = 0; v < v_count; ++v) {
      const VertexId p = parent_[v];
      if (p == kNoVertex) {
        if (root_ != kNoVertex) throw ValidationError("tree has more than one root");
        root_ = static_cast<VertexId>(v);
      } else if (p < 0 || static_cast<std::size_t>(p) >= v_count ||
                 p == static_cast<VertexId>(v)) {
        throw ValidationError("parent index out of range");
      } else {
        ++degree[p];
      }
    }
    if (root_ == kNoVertex) throw ValidationError("cycle detected: tree has no root");

    child_begin_.assign(v_count + 1, 0);
    for (std::size_t v = 0; v < v_count; ++v) child_begin_[v + 1] = child_begin_[v] + degree[v];
    children_.assign(v_count > 0 ? v_count - 1 : 0, kNoVertex);
    std::vector<VertexId> fill(child_begin_.begin(), child_begin_.end() - 1);
    for (std::size_t v = 0; v < v_count; ++v) {
      if (parent_[v] != kNoVertex) children_[fill[parent_[v]]++] = static_cast<VertexId>(v);
    }

    // Reachability from the root doubles as the acyclicity check.
    depth_.assign(v_count, -1);
    std::vector<VertexId> stack{root_};
    depth_[root_] = 0;
    std::size_t reached = 0;
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      ++reached;
      for (VertexId c : children(u)) {
        depth_[c] = depth_[u] + 1;
        stack.push_back(c);
      }
    }
    if (reached != v_count) throw ValidationError("cycle detected: vertices unreachable from root");

    leaf_of_.assign(universe_, kNoVertex);
    leaf_count_ = 0;
    for (std::size_t v = 0; v < v_count; ++v) {
      const auto vid = static_cast<VertexId>(v);
      const double lab = label_[v];
      if (is_leaf(vid)) {
        const PointId p = point_[v];
        if (p == kNoPoint) throw ValidationError("leaf without a point (leaf/point count mismatch)");
        if (p >= universe_) throw ValidationError("leaf point outside the universe");
        if (leaf_of_[p] != kNoVertex) throw ValidationError("point appears at two leaves");
        if (lab != 0) throw ValidationError("leaf label must be 0");
        leaf_of_[p] = vid;
        ++leaf_count_;
      } else {
        if (point_[v] != kNoPoint) {
          throw ValidationError("internal vertex carries a point (leaf/point count mismatch)");
        }
        if (!(lab > 0) || !std::isfinite(lab)) {
          throw ValidationError("internal label must be positive and finite");
        }
      }
      if (parent_[v] != kNoVertex && lab > label_[parent_[v]]) {
        throw ValidationError("label inversion: child label exceeds parent label");
      }
    }
  }

  std::vector<VertexId> parent_;
  std::vector<double> label_;
  std::vector<PointId> point_;
  std::size_t universe_ = 0;

  VertexId root_ = kNoVertex;
  std::vector<VertexId> child_begin_;
  std::vector<VertexId> children_;
  std::vector<int> depth_;
  std::vector<VertexId> leaf_of_;
  std::size_t leaf_count_ = 0;
};

inline LabeledTree build_tree(std::vector<VertexId> parents, std::vector<double> labels,
                              std::vector<PointId> point_of_vertex, std::size_t universe) {
  return LabeledTree::build(std::move(parents), std::move(labels), std::move(point_of_vertex),
                            universe);
}

// A one-vertex tree holding a single point.
inline LabeledTree singleton_tree(PointId p, std::size_t universe) {
  return LabeledTree::build({kNoVertex}, {0.0}, {p}, universe);
}

// rho(x, y) = label(lca); 0 when x == y. Throws std::out_of_range for
// points not in the tree.
inline double tree_distance(const LabeledTree& t, PointId x, PointId y) {
  const VertexId a = t.checked_leaf(x);
  const VertexId b = t.checked_leaf(y);
  if (a == b) return 0.0;
  return t.label(t.naive_lca(a, b));
}

// Appends vertices in the order they are created; creating them in
// preorder yields a tree whose child lists follow creation order.
class TreeAssembler {
 public:
  explicit TreeAssembler(std::size_t universe) : universe_(universe) {}

  VertexId add(VertexId parent, double label, PointId point = kNoPoint) {
    parents_.push_back(parent);
    labels_.push_back(label);
    points_.push_back(point);
    return static_cast<VertexId>(parents_.size() - 1);
  }

  std::size_t size() const { return parents_.size(); }

  LabeledTree finish() && {
    return LabeledTree::build(std::move(parents_), std::move(labels_), std::move(points_),
                              universe_);
  }

 private:
  std::size_t universe_;
  std::vector<VertexId> parents_;
  std::vector<double> labels_;
  std::vector<PointId> points_;
};

namespace detail {

// Copies the subtree under `v` in preorder, skipping internal vertices
// with a single child (their labels never occur as an lca label).
inline void copy_without_unary(const LabeledTree& t, VertexId v, VertexId out_parent,
                               TreeAssembler& out) {
  while (t.children(v).size() == 1) v = t.children(v)[0];
  const VertexId id = out.add(out_parent, t.label(v), t.point_of(v));
  for (VertexId c : t.children(v)) copy_without_unary(t, c, id, out);
}

// Left comb over children[0..count): the comb vertices all carry `label`.
inline void emit_comb(const LabeledTree& t, std::span<const VertexId> kids, double label,
                      VertexId out_parent, TreeAssembler& out);

inline void emit_binary(const LabeledTree& t, VertexId v, VertexId out_parent,
                        TreeAssembler& out) {
  while (t.children(v).size() == 1) v = t.children(v)[0];
  auto kids = t.children(v);
  if (kids.empty()) {
    out.add(out_parent, 0.0, t.point_of(v));
    return;
  }
  emit_comb(t, kids, t.label(v), out_parent, out);
}

inline void emit_comb(const LabeledTree& t, std::span<const VertexId> kids, double label,
                      VertexId out_parent, TreeAssembler& out) {
  if (kids.size() == 1) {
    emit_binary(t, kids[0], out_parent, out);
    return;
  }
  const VertexId id = out.add(out_parent, label);
  emit_comb(t, kids.first(kids.size() - 1), label, id, out);
  emit_binary(t, kids.back(), id, out);
}

inline void copy_with_order(const LabeledTree& t,
                            const std::vector<std::vector<VertexId>>& order, VertexId v,
                            VertexId out_parent, TreeAssembler& out) {
  const VertexId id = out.add(out_parent, t.label(v), t.point_of(v));
  for (VertexId c : order[v]) copy_with_order(t, order, c, id, out);
}

}  // namespace detail

inline bool has_unary_vertex(const LabeledTree& t) {
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    if (t.children(static_cast<VertexId>(v)).size() == 1) return true;
  }
  return false;
}

inline bool is_binary(const LabeledTree& t) {
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    const auto c = t.children(static_cast<VertexId>(v)).size();
    if (c != 0 && c != 2) return false;
  }
  return true;
}

// Contracts single-child vertices; distances are unchanged.
inline LabeledTree eliminate_unary(const LabeledTree& t) {
  TreeAssembler out(t.universe());
  detail::copy_without_unary(t, t.root(), kNoVertex, out);
  return std::move(out).finish();
}

// Every internal vertex ends up with exactly two children. Unary vertices
// are contracted and wider vertices become left combs whose new vertices
// reuse the original label, so tree_distance is preserved exactly and the
// left-to-right leaf order is kept.
inline LabeledTree binarize(const LabeledTree& t) {
  TreeAssembler out(t.universe());
  detail::emit_binary(t, t.root(), kNoVertex, out);
  return std::move(out).finish();
}

// Number of leaves below each vertex.
inline std::vector<std::size_t> subtree_leaf_counts(const LabeledTree& t) {
  const std::size_t n = t.vertex_count();
  std::vector<std::size_t> count(n, 0);
  // Deepest first: bucket vertices by depth.
  int max_depth = 0;
  for (std::size_t v = 0; v < n; ++v) max_depth = std::max(max_depth, t.depth(static_cast<VertexId>(v)));
  std::vector<std::vector<VertexId>> by_depth(static_cast<std::size_t>(max_depth) + 1);
  for (std::size_t v = 0; v < n; ++v) {
    by_depth[t.depth(static_cast<VertexId>(v))].push_back(static_cast<VertexId>(v));
  }
  for (auto level = by_depth.rbegin(); level != by_depth.rend(); ++level) {
    for (VertexId v : *level) {
      if (t.is_leaf(v)) count[v] = 1;
      if (t.parent(v) != kNoVertex) count[t.parent(v)] += count[v];
    }
  }
  return count;
}

// SORT-CHILDREN: orders every child list non-increasingly by leaf count
// using one bucket sort over all vertices (stable in vertex id).
inline LabeledTree sort_children(const LabeledTree& t) {
  const std::size_t n = t.vertex_count();
  const auto leaves = subtree_leaf_counts(t);
  const std::size_t max_count = t.leaf_count();
  std::vector<std::vector<VertexId>> bucket(max_count + 1);
  for (std::size_t v = 0; v < n; ++v) bucket[leaves[v]].push_back(static_cast<VertexId>(v));
  std::vector<std::vector<VertexId>> order(n);
  for (std::size_t c = max_count + 1; c-- > 0;) {
    for (VertexId v : bucket[c]) {
      if (t.parent(v) != kNoVertex) order[t.parent(v)].push_back(v);
    }
  }
  TreeAssembler out(t.universe());
  detail::copy_with_order(t, order, t.root(), kNoVertex, out);
  return std::move(out).finish();
}

// True when every child list is non-increasing in leaf count.
inline bool children_sorted_by_size(const LabeledTree& t) {
  const auto leaves = subtree_leaf_counts(t);
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    auto kids = t.children(static_cast<VertexId>(v));
    for (std::size_t i = 1; i < kids.size(); ++i) {
      if (leaves[kids[i - 1]] < leaves[kids[i]]) return false;
    }
  }
  return true;
}

namespace detail {

// Smallest integer e with k^e >= x.
inline int ceil_log(double x, double k) {
  int e = static_cast<int>(std::ceil(std::log(x) / std::log(k)));
  while (std::pow(k, e) < x) ++e;
  while (std::pow(k, e - 1) >= x) --e;
  return e;
}

struct KHstBuilder {
  const LabeledTree& t;
  double k;
  std::vector<int> exponent;  // per internal vertex of t
  TreeAssembler out;

  // `v` hangs below output vertex out_parent whose exponent is parent_exp.
  void emit(VertexId v, VertexId out_parent, int parent_exp) {
    if (t.is_leaf(v)) {
      out.add(out_parent, 0.0, t.point_of(v));
      return;
    }
    const int e = exponent[v];
    VertexId attach = out_parent;
    // Unary fillers make every internal edge drop by exactly one power of k.
    for (int f = parent_exp - 1; f > e; --f) attach = out.add(attach, std::pow(k, f));
    const VertexId id = out.add(attach, std::pow(k, e));
    emit_children(v, id, e);
  }

  // Children of v whose exponent equals e are merged into the output vertex.
  void emit_children(VertexId v, VertexId id, int e) {
    for (VertexId c : t.children(v)) {
      if (!t.is_leaf(c) && exponent[c] == e) {
        emit_children(c, id, e);
      } else {
        emit(c, id, e);
      }
    }
  }
};

}  // namespace detail

// Converts a 1-HST into an exact k-HST over the same points: labels are
// rounded up to integer powers of k, edges whose endpoints round to the
// same power are contracted, and unary fillers are inserted so that every
// internal child label is its parent's label divided by k. For all pairs,
// rho <= rho_out < k * rho. With k == 1 labels are kept and only
// equal-label edges are contracted.
inline LabeledTree to_k_hst(const LabeledTree& t, double k) {
  if (!(k >= 1)) throw std::invalid_argument("to_k_hst: k must be >= 1");
  if (t.vertex_count() == 1) return t;
  if (k == 1) {
    const VertexId root = t.root();
    TreeAssembler plain(t.universe());
    struct Plain {
      const LabeledTree& t;
      TreeAssembler& out;
      void emit(VertexId v, VertexId parent) {
        if (t.is_leaf(v)) {
          out.add(parent, 0.0, t.point_of(v));
          return;
        }
        const VertexId id = out.add(parent, t.label(v));
        merge(v, id);
      }
      void merge(VertexId v, VertexId id) {
        for (VertexId c : t.children(v)) {
          if (!t.is_leaf(c) && t.label(c) == t.label(v)) {
            merge(c, id);
          } else {
            emit(c, id);
          }
        }
      }
    } plain_builder{t, plain};
    plain_builder.emit(root, kNoVertex);
    return std::move(plain).finish();
  }
  detail::KHstBuilder b{t, k, std::vector<int>(t.vertex_count(), 0), TreeAssembler(t.universe())};
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    const auto vid = static_cast<VertexId>(v);
    if (!t.is_leaf(vid)) b.exponent[v] = detail::ceil_log(t.label(vid), k);
  }
  const VertexId root = t.root();
  const VertexId id = b.out.add(kNoVertex, std::pow(k, b.exponent[root]));
  b.emit_children(root, id, b.exponent[root]);
  return std::move(b.out).finish();
}

// ---------------------------------------------------------------------------
// Text format:
//   tree <vertex count> <universe>
//   parents <p_0> ... (-1 for the root)
//   labels <l_0> ...  (17 significant digits)
//   points <q_0> ...  (-1 for internal vertices)

inline void write_tree(const LabeledTree& t, std::ostream& out) {
  const std::size_t n = t.vertex_count();
  out << "tree " << n << ' ' << t.universe() << "\nparents";
  for (VertexId p : t.parents()) out << ' ' << p;
  out << "\nlabels";
  for (double l : t.labels()) out << ' ' << format_double(l);
  out << "\npoints";
  for (PointId p : t.vertex_points()) {
    out << ' ';
    if (p == kNoPoint) {
      out << -1;
    } else {
      out << p;
    }
  }
  out << '\n';
}

inline LabeledTree read_tree(TokenReader& in) {
  in.expect("tree");
  const auto n = in.integer<std::size_t>("vertex count");
  const auto universe = in.integer<std::size_t>("universe");
  std::vector<VertexId> parents(n);
  std::vector<double> labels(n);
  std::vector<PointId> points(n);
  in.expect("parents");
  for (auto& p : parents) p = in.integer<VertexId>("parent");
  in.expect("labels");
  for (auto& l : labels) l = in.real("label");
  in.expect("points");
  for (auto& p : points) {
    const auto raw = in.integer<std::int64_t>("point");
    if (raw < -1 || raw >= static_cast<std::int64_t>(kNoPoint)) throw ParseError("point id out of range");
    p = raw == -1 ? kNoPoint : static_cast<PointId>(raw);
  }
  return LabeledTree::build(std::move(parents), std::move(labels), std::move(points), universe);
}

inline std::string tree_to_string(const LabeledTree& t) {
  std::ostringstream os;
  write_tree(t, os);
  return os.str();
}

inline LabeledTree tree_from_string(const std::string& text) {
  std::istringstream is(text);
  TokenReader reader(is);
  return read_tree(reader);
}

}  // namespace ramsey

#endif  // RAMSEY_TREE_HPP_
