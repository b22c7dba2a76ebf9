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

// Finite metric spaces given by a dense distance matrix.

#ifndef RAMSEY_METRIC_HPP_
#define RAMSEY_METRIC_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/common.hpp"
#include "ramsey/random.hpp"
#include "ramsey/text_io.hpp"

namespace ramsey {

// Strictly increasing list of point indices.
class PointSet {
 public:
  PointSet() = default;

  // Throws ValidationError unless `members` is strictly increasing.
  static PointSet from_sorted(std::vector<PointId> members) {
    for (std::size_t i = 1; i < members.size(); ++i) {
      if (members[i - 1] >= members[i]) {
        throw ValidationError("point set is not strictly increasing");
      }
    }
    PointSet s;
    s.members_ = std::move(members);
    return s;
  }

  static PointSet from_unsorted(std::vector<PointId> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    PointSet s;
    s.members_ = std::move(members);
    return s;
  }

  static PointSet all(std::size_t n) {
    PointSet s;
    s.members_.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.members_[i] = static_cast<PointId>(i);
    return s;
  }

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  PointId operator[](std::size_t i) const { return members_[i]; }
  std::span<const PointId> members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool contains(PointId p) const {
    return std::binary_search(members_.begin(), members_.end(), p);
  }

  bool is_subset_of(const PointSet& other) const {
    return std::includes(other.members_.begin(), other.members_.end(),
                         members_.begin(), members_.end());
  }

  // Set difference this \ other.
  PointSet minus(const PointSet& other) const {
    PointSet out;
    std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                        other.members_.end(), std::back_inserter(out.members_));
    return out;
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<PointId> members_;
};

enum class Validation {
  // Shape, zero diagonal, symmetry, positivity, finiteness.
  kStructural,
  // kStructural plus the O(n^3) triangle inequality scan.
  kFull,
};

// Relative slack for the triangle inequality: d(i,j) <= d(i,k)+d(k,j)+tol*diam.
inline constexpr double kTriangleTolerance = 1e-9;

class MetricSpace {
 public:
  MetricSpace() = default;

  // `dist` is row-major n*n. Throws ValidationError on any violation.
  static MetricSpace from_matrix(std::size_t n, std::vector<double> dist,
                                 Validation level = Validation::kFull) {
    if (n == 0) throw ValidationError("metric must have at least one point");
    if (dist.size() != n * n) throw ValidationError("distance matrix has wrong size");
    MetricSpace m;
    m.n_ = n;
    m.dist_ = std::move(dist);
    m.check_structure();
    m.compute_caches();
    if (level == Validation::kFull) m.check_triangle();
    return m;
  }

  std::size_t size() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {dist_.data() + i * n_, n_};
  }

  std::span<const double> matrix() const { return dist_; }

  double diameter() const { return diam_; }
  double min_positive_distance() const { return min_pos_; }
  // 1 by convention when n == 1.
  double aspect_ratio() const { return n_ == 1 ? 1.0 : diam_ / min_pos_; }
  // Distance to the closest other point; +inf when n == 1.
  double nearest_distance(std::size_t i) const { return nearest_[i]; }

  // The sub-metric on `points`; point i of the result is points[i].
  MetricSpace restrict_to(std::span<const PointId> points) const {
    const std::size_t m = points.size();
    std::vector<double> sub(m * m);
    for (std::size_t a = 0; a < m; ++a) {
      const double* src = dist_.data() + static_cast<std::size_t>(points[a]) * n_;
      for (std::size_t b = 0; b < m; ++b) sub[a * m + b] = src[points[b]];
    }
    return from_matrix(m, std::move(sub), Validation::kStructural);
  }

  // Exhaustive triangle scan; returns the worst excess over the tolerance
  // band (<= 0 means valid).
  double triangle_excess() const {
    const double tol = kTriangleTolerance * diam_;
    double worst = -tol;
    for (std::size_t k = 0; k < n_; ++k) {
      const double* dk = dist_.data() + k * n_;
      for (std::size_t i = 0; i < n_; ++i) {
        const double* di = dist_.data() + i * n_;
        const double dik = di[k];
        for (std::size_t j = 0; j < n_; ++j) {
          worst = std::max(worst, di[j] - dik - dk[j]);
        }
      }
    }
    return worst - tol;
  }

  friend bool operator==(const MetricSpace& a, const MetricSpace& b) {
    return a.n_ == b.n_ && a.dist_ == b.dist_;
  }

 private:
  void check_structure() const {
    for (std::size_t i = 0; i < n_; ++i) {
      if ((*this)(i, i) != 0.0) throw ValidationError("nonzero diagonal entry");
      for (std::size_t j = 0; j < n_; ++j) {
        const double v = (*this)(i, j);
        if (!std::isfinite(v)) throw ValidationError("non-finite distance");
        if (v < 0) throw ValidationError("negative distance");
        if (v != (*this)(j, i)) throw ValidationError("asymmetric distance matrix");
        if (i != j && v == 0) {
          throw ValidationError("distinct points " + std::to_string(i) + " and " +
                                std::to_string(j) + " at distance 0");
        }
      }
    }
  }

  void compute_caches() {
    diam_ = 0;
    min_pos_ = std::numeric_limits<double>::infinity();
    nearest_.assign(n_, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (i == j) continue;
        const double v = (*this)(i, j);
        diam_ = std::max(diam_, v);
        nearest_[i] = std::min(nearest_[i], v);
      }
      min_pos_ = std::min(min_pos_, nearest_[i]);
    }
    if (n_ == 1) min_pos_ = 0;
  }

  void check_triangle() const {
    if (triangle_excess() > 0) throw ValidationError("triangle inequality violated");
  }

  std::size_t n_ = 0;
  std::vector<double> dist_;
  double diam_ = 0;
  double min_pos_ = 0;
  std::vector<double> nearest_;
};

inline double diameter(const MetricSpace& m) { return m.diameter(); }
inline double min_positive_distance(const MetricSpace& m) { return m.min_positive_distance(); }
inline double aspect_ratio(const MetricSpace& m) { return m.aspect_ratio(); }

// Closed ball {y : d(x,y) <= r}.
inline PointSet ball(const MetricSpace& m, PointId x, double r) {
  std::vector<PointId> out;
  auto row = m.row(x);
  for (std::size_t y = 0; y < row.size(); ++y) {
    if (row[y] <= r) out.push_back(static_cast<PointId>(y));
  }
  return PointSet::from_sorted(std::move(out));
}

inline std::size_t ball_size(const MetricSpace& m, PointId x, double r) {
  std::size_t count = 0;
  for (double v : m.row(x)) count += v <= r;
  return count;
}

// ---------------------------------------------------------------------------
// Text format: first token n, then n rows of n distances.

inline MetricSpace load_metric(std::istream& in, Validation level = Validation::kFull) {
  TokenReader reader(in);
  const auto n = reader.integer<std::size_t>("point count");
  if (n == 0) throw ParseError("point count must be positive");
  std::vector<double> dist(n * n);
  for (std::size_t i = 0; i < n * n; ++i) dist[i] = reader.real("distance");
  if (!reader.at_end()) throw ParseError("trailing data after distance matrix");
  return MetricSpace::from_matrix(n, std::move(dist), level);
}

inline void save_metric(const MetricSpace& m, std::ostream& out) {
  const std::size_t n = m.size();
  out << n << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out << ' ';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

inline std::string metric_to_string(const MetricSpace& m) {
  std::ostringstream os;
  save_metric(m, os);
  return os.str();
}

inline MetricSpace metric_from_string(const std::string& text) {
  std::istringstream is(text);
  return load_metric(is);
}

// ---------------------------------------------------------------------------
// Generators.

struct MetricKind {
  enum class Family { kEuclidean, kGraph, kEquilateral, kUniformMatrix };
  Family family = Family::kEuclidean;
  int dim = 2;                 // euclidean
  double edge_density = 0.1;   // graph

  static MetricKind euclidean(int dim) { return {Family::kEuclidean, dim, 0.1}; }
  static MetricKind graph(double density) { return {Family::kGraph, 2, density}; }
  static MetricKind equilateral() { return {Family::kEquilateral, 2, 0.1}; }
  static MetricKind uniform_matrix() { return {Family::kUniformMatrix, 2, 0.1}; }

  // "euclidean", "euclidean:3", "graph", "graph:0.25", "equilateral",
  // "uniform_matrix".
  static MetricKind parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    try {
      if (name == "euclidean") {
        MetricKind k = euclidean(arg.empty() ? 2 : std::stoi(arg));
        if (k.dim < 1) throw ParseError("euclidean dimension must be >= 1");
        return k;
      }
      if (name == "graph") {
        MetricKind k = graph(arg.empty() ? 0.1 : std::stod(arg));
        if (!(k.edge_density >= 0 && k.edge_density <= 1)) {
          throw ParseError("graph edge density must lie in [0,1]");
        }
        return k;
      }
    } catch (const std::logic_error&) {
      throw ParseError("bad metric kind argument: '" + text + "'");
    }
    if (name == "equilateral" && arg.empty()) return equilateral();
    if (name == "uniform_matrix" && arg.empty()) return uniform_matrix();
    throw ParseError("unknown metric kind: '" + text + "'");
  }

  std::string to_string() const {
    switch (family) {
      case Family::kEuclidean: return "euclidean:" + std::to_string(dim);
      case Family::kGraph: return "graph:" + format_double(edge_density);
      case Family::kEquilateral: return "equilateral";
      case Family::kUniformMatrix: return "uniform_matrix";
    }
    return "";
  }
};

namespace detail {

// Integer edge weights keep shortest-path sums exact, so the closure
// satisfies the triangle inequality with no rounding slack at all.
inline std::vector<double> graph_metric(std::size_t n, double density, Rng& rng) {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  auto add_edge = [&](std::size_t a, std::size_t b) {
    const double w = static_cast<double>(rng.between(1, 16));
    adj[a].emplace_back(b, w);
    adj[b].emplace_back(a, w);
  };
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(std::span<std::size_t>(order));
  // Random spanning tree for connectivity, then extra edges.
  for (std::size_t i = 1; i < n; ++i) add_edge(order[i], order[rng.below(i)]);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (rng.bernoulli(density)) add_edge(a, b);
    }
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n * n, inf);
  using Item = std::pair<double, std::size_t>;
  for (std::size_t s = 0; s < n; ++s) {
    double* row = dist.data() + s * n;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    row[s] = 0;
    heap.emplace(0.0, s);
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d > row[u]) continue;
      for (auto [v, w] : adj[u]) {
        if (d + w < row[v]) {
          row[v] = d + w;
          heap.emplace(row[v], v);
        }
      }
    }
  }
  return dist;
}

inline std::vector<double> uniform_matrix_metric(std::size_t n, Rng& rng) {
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      dist[i * n + j] = dist[j * n + i] = static_cast<double>(rng.between(1, 64));
    }
  }
  // Floyd-Warshall closure repairs the triangle inequality.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = dist[i * n + k];
      double* di = dist.data() + i * n;
      const double* dk = dist.data() + k * n;
      for (std::size_t j = 0; j < n; ++j) di[j] = std::min(di[j], dik + dk[j]);
    }
  }
  return dist;
}

}  // namespace detail

// Deterministic in (kind, n, seed). Outputs are metrics by construction,
// so only the structural checks run here; triangle_excess() is available
// for callers that want the cubic scan.
inline MetricSpace gen_metric(const MetricKind& kind, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("gen_metric: n must be >= 1");
  Rng rng(seed);
  std::vector<double> dist(n * n, 0.0);
  switch (kind.family) {
    case MetricKind::Family::kEuclidean: {
      const auto dim = static_cast<std::size_t>(kind.dim);
      std::vector<double> coords(n * dim);
      for (double& c : coords) c = rng.uniform01();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          double s = 0;
          for (std::size_t t = 0; t < dim; ++t) {
            const double diff = coords[i * dim + t] - coords[j * dim + t];
            s += diff * diff;
          }
          dist[i * n + j] = dist[j * n + i] = std::sqrt(s);
        }
      }
      break;
    }
    case MetricKind::Family::kGraph:
      dist = detail::graph_metric(n, kind.edge_density, rng);
      break;
    case MetricKind::Family::kEquilateral:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = i == j ? 0.0 : 1.0;
      }
      break;
    case MetricKind::Family::kUniformMatrix:
      dist = detail::uniform_matrix_metric(n, rng);
      break;
  }
  return MetricSpace::from_matrix(n, std::move(dist), Validation::kStructural);
}

}  // namespace ramsey

#endif  // RAMSEY_METRIC_HPP_
