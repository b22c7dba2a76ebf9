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

// Statistical and exhaustive checks of the library's guarantees, and the
// structured report they write into.

#ifndef RAMSEY_EVAL_HPP_
#define RAMSEY_EVAL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/chain.hpp"
#include "ramsey/common.hpp"
#include "ramsey/generators.hpp"
#include "ramsey/lipschitz.hpp"
#include "ramsey/metric.hpp"
#include "ramsey/oracle.hpp"
#include "ramsey/partition.hpp"
#include "ramsey/random.hpp"
#include "ramsey/ranking.hpp"
#include "ramsey/reference.hpp"
#include "ramsey/size_ancestor.hpp"
#include "ramsey/tree.hpp"
#include "ramsey/tree_index.hpp"

namespace ramsey {

// Relative tolerance for comparisons between a computed value and a
// distance-derived bound.
inline constexpr double kRelativeTolerance = 1e-9;

enum class Relation { kAtLeast, kAtMost };

struct CheckResult {
  std::string name;
  std::string invariant;
  double observed = 0;
  double bound = 0;
  double slack = 0;
  Relation relation = Relation::kAtMost;
  bool pass = false;

  static CheckResult at_least(std::string name, std::string invariant, double observed,
                              double bound, double slack = 0) {
    CheckResult r{std::move(name), std::move(invariant), observed, bound, slack,
                  Relation::kAtLeast, false};
    r.pass = observed >= bound - slack;
    return r;
  }
  static CheckResult at_most(std::string name, std::string invariant, double observed,
                             double bound, double slack = 0) {
    CheckResult r{std::move(name), std::move(invariant), observed, bound, slack,
                  Relation::kAtMost, false};
    r.pass = observed <= bound + slack;
    return r;
  }
};

class StatsReport {
 public:
  void add(CheckResult r) { checks_.push_back(std::move(r)); }
  // A measured quantity with no pass/fail condition attached.
  void note(std::string name, double value) { notes_.emplace_back(std::move(name), value); }
  void append(const StatsReport& other) {
    notes_.insert(notes_.end(), other.notes_.begin(), other.notes_.end());
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
  }

  const std::vector<CheckResult>& checks() const { return checks_; }
  std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(checks_.begin(), checks_.end(), [](const auto& c) { return !c.pass; }));
  }
  bool all_pass() const { return failures() == 0; }

  // Notes, then one line per check with fixed field order, then a summary.
  void write(std::ostream& out) const {
    for (const auto& [name, value] : notes_) out << "value=" << name << " observed=" << number(value) << '\n';
    for (const auto& c : checks_) out << format(c) << '\n';
    out << "summary checks=" << checks_.size() << " failed=" << failures()
        << " status=" << (all_pass() ? "pass" : "fail") << '\n';
  }

  static std::string format(const CheckResult& c) {
    std::string line = "check=" + c.name + " invariant=\"" + c.invariant + "\"";
    line += " observed=" + number(c.observed);
    line += std::string(" relation=") + (c.relation == Relation::kAtLeast ? ">=" : "<=");
    line += " bound=" + number(c.bound);
    line += " slack=" + number(c.slack);
    line += std::string(" status=") + (c.pass ? "pass" : "fail");
    return line;
  }

 private:
  static std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

  std::vector<std::pair<std::string, double>> notes_;
  std::vector<CheckResult> checks_;
};

namespace eval {

// Three standard errors of a frequency estimated from `samples` draws,
// taken at the hypothesised probability p.
inline double frequency_slack(double p, std::size_t samples) {
  if (samples == 0) return 0;
  return 3 * std::sqrt(std::max(0.0, p * (1 - p)) / static_cast<double>(samples));
}

struct MeanAndSlack {
  double mean = 0;
  double slack = 0;  // three standard errors of the mean
};

inline MeanAndSlack mean_and_slack(const std::vector<double>& xs) {
  MeanAndSlack out;
  if (xs.empty()) return out;
  const auto n = static_cast<double>(xs.size());
  for (double x : xs) out.mean += x;
  out.mean /= n;
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.slack = 3 * std::sqrt(ss / (n - 1) / n);
  }
  return out;
}

inline bool within(double a, double b) { return a <= b * (1 + kRelativeTolerance); }

// Ultrametric distance matrix of a tree over points 0..n-1.
inline std::vector<double> tree_matrix(const LabeledTree& t, std::size_t n) {
  const TreeQueryIndex idx(t);
  std::vector<double> out(n * n, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const double rho = idx.label(idx.lca(t.checked_leaf(static_cast<PointId>(x)),
                                           t.checked_leaf(static_cast<PointId>(y))));
      out[x * n + y] = out[y * n + x] = rho;
    }
  }
  return out;
}

struct PaddingConfig {
  PointId x = 0;
  double delta = 1;
  double t = 0.125;
};

// Three (x, delta, t) choices: delta is eight times the distance from a
// random x to its 2nd, 4th and 8th nearest neighbour, so that the inner
// ball holds a handful of points; t alternates between delta/8 and delta/16.
inline std::vector<PaddingConfig> padding_configs(const MetricSpace& m, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = m.size();
  std::vector<PaddingConfig> out;
  const std::size_t ranks[] = {2, 4, 8};
  for (std::size_t c = 0; c < 3; ++c) {
    PaddingConfig cfg;
    cfg.x = static_cast<PointId>(rng.below(n));
    auto row = m.row(cfg.x);
    std::vector<double> sorted(row.begin(), row.end());
    std::sort(sorted.begin(), sorted.end());
    const double r = sorted[std::min(ranks[c], n - 1)];
    cfg.delta = r > 0 ? 8 * r : 1.0;
    cfg.t = cfg.delta / (c == 1 ? 16 : 8);
    out.push_back(cfg);
  }
  return out;
}

// CKR padding frequency of ball(x, t) against its lower bound, and an exact
// check that every sampled cluster has diameter at most delta.
inline void check_padding(StatsReport& report, const std::string& name, const MetricSpace& m,
                          const PaddingConfig& cfg, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = m.size();
  const PointSet inner = ball(m, cfg.x, cfg.t);
  std::size_t padded = 0;
  std::size_t oversized = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Partition p = ckr_partition(m, cfg.delta, derive_seed(seed, s));
    bool ok = true;
    for (PointId y : inner) ok = ok && p.same_cluster(cfg.x, y);
    padded += ok;
    for (std::size_t a = 0; a < n; ++a) {
      auto row = m.row(a);
      for (std::size_t b = a + 1; b < n; ++b) {
        if (p.cluster_of[a] == p.cluster_of[b] && row[b] > cfg.delta) ++oversized;
      }
    }
  }
  const double bound = padding_probability_bound(m, cfg.x, cfg.delta, cfg.t);
  const double freq = samples ? static_cast<double>(padded) / static_cast<double>(samples) : 1.0;
  report.add(CheckResult::at_least(name + ".padded", "Pr[ball(x,t) in P(x)] >= (|B(x,D/8)|/|B(x,D)|)^(16t/D)",
                                   freq, bound, frequency_slack(bound, samples)));
  report.add(CheckResult::at_most(name + ".bounded", "every cluster has diameter <= D",
                                  static_cast<double>(oversized), 0));
}

// Per-point frequency of being padded at every level of a partition tree.
// Reports the point with the smallest margin over its slack.
inline void check_complete_padding(StatsReport& report, const std::string& name,
                                   const MetricSpace& m, double alpha, std::size_t trees,
                                   std::uint64_t seed) {
  const std::size_t n = m.size();
  std::vector<std::size_t> hits(n, 0);
  for (std::size_t i = 0; i < trees; ++i) {
    const PointSet y = padded_points(m, sample_partition_tree(m, alpha, derive_seed(seed, i)));
    for (PointId p : y) ++hits[p];
  }
  const double bound = std::pow(static_cast<double>(n), -16 / alpha);
  const double slack = frequency_slack(bound, trees);
  double worst = 1;
  for (std::size_t x = 0; x < n; ++x) {
    worst = std::min(worst, trees ? static_cast<double>(hits[x]) / static_cast<double>(trees) : 1.0);
  }
  report.add(CheckResult::at_least(name + ".min_point_frequency",
                                   "every point padded at all levels with frequency >= n^(-16/alpha)",
                                   worst, bound, slack));
}

// Mean size of the best-of-trials Ramsey subset, and for each returned
// result the exhaustive distortion check.
inline void check_ramsey_subset(StatsReport& report, const std::string& name, const MetricSpace& m,
                                double epsilon, std::size_t reps, std::uint64_t seed) {
  const std::size_t n = m.size();
  const double c = 128 / epsilon;
  std::vector<double> sizes;
  std::size_t violations = 0;
  double worst = n > 1 ? 0.0 : 1.0;
  for (std::size_t r = 0; r < reps; ++r) {
    const RamseySubsetResult res = ramsey_subset(m, epsilon, derive_seed(seed, r));
    sizes.push_back(static_cast<double>(res.subset.size()));
    const auto rho = tree_matrix(res.tree, n);
    std::vector<char> in_y(n, 0);
    for (PointId y : res.subset) in_y[y] = 1;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        const double d = m(x, y);
        const double p = rho[x * n + y];
        if (!within(d, p)) ++violations;
        if (in_y[x] || in_y[y]) {
          if (!within(p, c * d)) ++violations;
          worst = std::max(worst, p / d);
        }
      }
    }
  }
  const MeanAndSlack s = mean_and_slack(sizes);
  report.add(CheckResult::at_least(name + ".mean_size", "mean |Y| >= n^(1-eps)", s.mean,
                                   std::pow(static_cast<double>(n), 1 - epsilon)));
  report.add(CheckResult::at_most(name + ".violations",
                                  "d <= rho on X x X and rho <= (128/eps) d on X x Y",
                                  static_cast<double>(violations), 0));
  report.add(CheckResult::at_most(name + ".max_ratio", "rho / d on X x Y <= 128/eps", worst, c,
                                  c * kRelativeTolerance));
}

// Random metrics, subsets Y and ultrametrics on Y dominating d; the
// extension must be an ultrametric, dominate d, stay within 6 alpha d on
// X x Y (alpha measured on Y) and equal 3 rho on Y x Y.
inline void check_extension(StatsReport& report, const std::string& name, std::size_t instances,
                            std::size_t max_n, std::uint64_t seed) {
  static const MetricKind kinds[] = {MetricKind::euclidean(2), MetricKind::graph(0.1),
                                     MetricKind::uniform_matrix(), MetricKind::euclidean(5)};
  std::size_t violations = 0;
  double worst = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    Rng rng(derive_seed(seed, 2 * i));
    const std::size_t n = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_n)));
    const MetricSpace m = gen_metric(kinds[i % 4], n, derive_seed(seed, 2 * i + 1));
    std::vector<PointId> members;
    for (std::size_t x = 0; x < n; ++x) {
      if (rng.bernoulli(0.4)) members.push_back(static_cast<PointId>(x));
    }
    if (members.empty()) members.push_back(static_cast<PointId>(rng.below(n)));
    const MetricSpace sub = m.restrict_to(members);
    const LabeledTree local =
        i % 2 == 0 ? mst_hst(sub)
                   : partition_tree_to_hst(sub, sample_partition_tree(sub, 8, rng.below(1u << 30)));
    const LabeledTree on_y = relabel_points(local, members, n);
    const std::size_t ny = members.size();
    const TreeQueryIndex base(on_y);
    double alpha = 1;
    std::vector<double> rho_y(ny * ny, 0.0);
    for (std::size_t a = 0; a < ny; ++a) {
      for (std::size_t b = a + 1; b < ny; ++b) {
        const double r = base.label(base.lca(on_y.leaf_of(members[a]), on_y.leaf_of(members[b])));
        rho_y[a * ny + b] = r;
        alpha = std::max(alpha, r / m(members[a], members[b]));
      }
    }
    const auto rho = tree_matrix(extend_ultrametric(m, on_y), n);
    std::vector<char> in_y(n, 0);
    for (PointId y : members) in_y[y] = 1;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (x == y) continue;
        const double r = rho[x * n + y];
        if (!within(m(x, y), r)) ++violations;
        if (in_y[x] || in_y[y]) {
          if (!within(r, 6 * alpha * m(x, y))) ++violations;
          worst = std::max(worst, r / (alpha * m(x, y)));
        }
        for (std::size_t z = 0; z < n; ++z) {
          if (rho[x * n + z] > std::max(r, rho[y * n + z])) ++violations;
        }
      }
    }
    for (std::size_t a = 0; a < ny; ++a) {
      for (std::size_t b = a + 1; b < ny; ++b) {
        if (rho[members[a] * n + members[b]] != 3 * rho_y[a * ny + b]) ++violations;
      }
    }
  }
  report.add(CheckResult::at_most(name + ".violations",
                                  "extension is an ultrametric, d <= rho', rho' <= 6 alpha d on X x Y, rho' = 3 rho on Y x Y",
                                  static_cast<double>(violations), 0));
  report.add(CheckResult::at_most(name + ".max_ratio", "rho' / (alpha d) on X x Y <= 6", worst, 6,
                                  6 * kRelativeTolerance));
}

// Sample means of sum_j |X_j|^p over chains built from `seeds` seeds.
inline void check_moments(StatsReport& report, const std::string& name, const MetricSpace& m,
                          double k, const std::vector<double>& ps, std::size_t seeds,
                          std::uint64_t seed) {
  if (seeds == 0) throw std::invalid_argument("check_moments: need at least one seed");
  std::vector<RamseyChain> chains;
  chains.reserve(seeds);
  for (std::size_t i = 0; i < seeds; ++i) {
    chains.push_back(build_chain(m, k, derive_seed(seed, i), ChainMode::kRestricted));
  }
  for (double p : ps) {
    std::vector<double> obs;
    double bound = 0;
    for (const auto& c : chains) {
      const ChainMoments s = chain_moment_stat(c, p);
      obs.push_back(s.observed);
      bound = s.bound;
    }
    const MeanAndSlack s = mean_and_slack(obs);
    char label[32];
    std::snprintf(label, sizeof label, ".p%g", p);
    report.add(CheckResult::at_most(name + label, "mean sum_j |X_j|^p <= max(k/(1+pk),1) n^(p+1/k)",
                                    s.mean, bound, s.slack));
  }
}

// Exhaustive distortion of an oracle over m and its worst access count.
inline void check_oracle_index(StatsReport& report, const std::string& name, const MetricSpace& m,
                               const OracleIndex& o) {
  const std::size_t n = m.size();
  if (o.size() != n) throw std::invalid_argument("oracle and metric sizes differ");
  const double c = o.chain().distortion_bound();
  std::size_t violations = 0;
  double worst = n > 1 ? 0.0 : 1.0;
  std::uint64_t accesses = 0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      AccessCounter counter;
      const double e = o.query(static_cast<PointId>(x), static_cast<PointId>(y), counter);
      accesses = std::max(accesses, counter.count);
      if (x == y) {
        violations += e != 0;
        continue;
      }
      const double d = m(x, y);
      if (!within(d, e) || !within(e, c * d)) ++violations;
      worst = std::max(worst, e / d);
    }
  }
  report.add(CheckResult::at_most(name + ".violations", "d <= E(x,y) <= 128k d on all pairs",
                                  static_cast<double>(violations), 0));
  report.add(CheckResult::at_most(name + ".max_ratio", "E(x,y) / d <= 128k", worst, c,
                                  c * kRelativeTolerance));
  report.add(CheckResult::at_most(name + ".max_accesses", "memory accesses per query <= 12",
                                  static_cast<double>(accesses), 12));
}

inline void check_oracle(StatsReport& report, const std::string& name, const MetricSpace& m,
                         double k, std::uint64_t seed) {
  check_oracle_index(report, name, m, build_oracle(m, k, seed));
}

// Worst access count over `queries` random pairs (all pairs when that is
// fewer) of an oracle on a generated metric.
inline void check_oracle_accesses(StatsReport& report, const std::string& name,
                                  const MetricSpace& m, double k, std::size_t queries,
                                  std::uint64_t seed) {
  const OracleIndex o = build_oracle(m, k, seed);
  const std::size_t n = m.size();
  std::uint64_t accesses = 0;
  auto probe = [&](std::size_t x, std::size_t y) {
    AccessCounter counter;
    o.query(static_cast<PointId>(x), static_cast<PointId>(y), counter);
    accesses = std::max(accesses, counter.count);
  };
  if (n * n <= queries) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) probe(x, y);
    }
  } else {
    Rng rng(derive_seed(seed, 1));
    for (std::size_t q = 0; q < queries; ++q) probe(rng.below(n), rng.below(n));
  }
  report.add(CheckResult::at_most(name + ".max_accesses", "memory accesses per query <= 12",
                                  static_cast<double>(accesses), 12));
}

// Exhaustive ranking checks: bijection, mutual inverses, agreement with the
// root-path scan of the level tree and the monotonicity ratio.
inline void check_ranking_index(StatsReport& report, const std::string& name,
                                const MetricSpace& m, const RankingIndex& r) {
  const std::size_t n = m.size();
  if (r.size() != n) throw std::invalid_argument("ranking and metric sizes differ");
  const auto levels = r.chain().level_of();
  std::size_t not_bijective = 0;
  std::size_t not_inverse = 0;
  std::size_t scan_mismatch = 0;
  std::vector<char> seen(n);
  for (std::size_t xi = 0; xi < n; ++xi) {
    const auto x = static_cast<PointId>(xi);
    std::fill(seen.begin(), seen.end(), 0);
    const auto scan = reference::ranking_permutation(r.tree(levels[x]).tree(), x);
    for (std::size_t i = 1; i <= n; ++i) {
      const PointId p = r.access(x, static_cast<std::int64_t>(i));
      if (seen[p]) ++not_bijective;
      seen[p] = 1;
      if (r.rank_of(x, p) != static_cast<std::int64_t>(i)) ++not_inverse;
      if (scan.size() != n || scan[i - 1] != p) ++scan_mismatch;
    }
    for (std::size_t u = 0; u < n; ++u) {
      const std::int64_t i = r.rank_of(x, static_cast<PointId>(u));
      if (i < 1 || i > static_cast<std::int64_t>(n) || r.access(x, i) != u) ++not_inverse;
    }
  }
  const RankingQuality q = ranking_quality(r, m);
  report.add(CheckResult::at_most(name + ".not_bijective", "every permutation is a bijection",
                                  static_cast<double>(not_bijective), 0));
  report.add(CheckResult::at_most(name + ".not_inverse", "rank_access and rank_of are inverse",
                                  static_cast<double>(not_inverse), 0));
  report.add(CheckResult::at_most(name + ".scan_mismatch", "rank_access matches the root-path scan",
                                  static_cast<double>(scan_mismatch), 0));
  report.add(CheckResult::at_most(name + ".max_ratio", "d(x,pi(i)) <= 768k d(x,pi(j)) for i < j",
                                  q.max_ratio, q.bound, q.bound * kRelativeTolerance));
}

inline void check_ranking(StatsReport& report, const std::string& name, const MetricSpace& m,
                          double k, std::uint64_t seed) {
  check_ranking_index(report, name, m, build_ranking(m, k, seed));
}

// Level trees of a chain: d <= rho on every pair they cover, and
// rho <= bound * d whenever one side is peeled at that level.
inline void check_chain(StatsReport& report, const std::string& name, const MetricSpace& m,
                        const RamseyChain& chain) {
  if (chain.n != m.size()) throw std::invalid_argument("chain and metric sizes differ");
  const double c = chain.distortion_bound();
  std::size_t violations = 0;
  double worst = chain.n > 1 ? 0.0 : 1.0;
  std::vector<char> peeled(chain.n);
  for (const auto& level : chain.levels) {
    const TreeQueryIndex idx(level.tree);
    const PointSet pts = level.tree.points();
    std::fill(peeled.begin(), peeled.end(), 0);
    for (PointId y : level.peeled) peeled[y] = 1;
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        const PointId x = pts[a];
        const PointId y = pts[b];
        const double rho = idx.label(idx.lca(level.tree.leaf_of(x), level.tree.leaf_of(y)));
        const double d = m(x, y);
        if (!within(d, rho)) ++violations;
        if (peeled[x] || peeled[y]) {
          if (!within(rho, c * d)) ++violations;
          worst = std::max(worst, rho / d);
        }
      }
    }
  }
  report.add(CheckResult::at_most(name + ".violations", "d <= rho_j, and rho_j <= bound d when one side is in Y_j",
                                  static_cast<double>(violations), 0));
  report.add(CheckResult::at_most(name + ".max_ratio", "rho_j / d on pairs touching Y_j <= bound",
                                  worst, c, c * kRelativeTolerance));
}

// Leaf counts for the instances below; log-uniform in [1, max_leaves] with
// the extremes always present.
inline std::vector<std::size_t> tree_sizes(std::size_t count, std::size_t max_leaves,
                                           std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (i == 0) {
      out.push_back(max_leaves);
    } else if (i == 1) {
      out.push_back(1);
    } else {
      const double e = rng.uniform01() * std::log2(static_cast<double>(max_leaves));
      out.push_back(std::clamp<std::size_t>(static_cast<std::size_t>(std::exp2(e)), 1, max_leaves));
    }
  }
  return out;
}

// Full and coarse size-ancestor queries against the walk-up answer for
// every leaf and every size up to n + 3.
inline void check_size_ancestor(StatsReport& report, const std::string& name, std::size_t trees,
                                std::size_t max_leaves, const std::vector<int>& coarse_m,
                                std::uint64_t seed) {
  const auto sizes = tree_sizes(trees, max_leaves, seed);
  std::size_t full_mismatch = 0;
  std::vector<std::size_t> coarse_mismatch(coarse_m.size(), 0);
  for (std::size_t i = 0; i < trees; ++i) {
    const auto shape = static_cast<TreeShape>(i % 3);
    const LabeledTree t = prepare_for_size_ancestor(
        random_tree(sizes[i], shape, derive_seed(seed, i + 1), 0.25));
    const TreeQueryIndex idx(t);
    const auto leaves = subtree_leaf_counts(t);
    const auto n = static_cast<std::int64_t>(t.leaf_count());
    const SizeAncestorIndex full = SizeAncestorIndex::full(idx);
    std::vector<SizeAncestorIndex> coarse;
    for (int m : coarse_m) coarse.push_back(SizeAncestorIndex::coarse(idx, m));
    for (PointId p : t.points()) {
      const VertexId leaf = t.leaf_of(p);
      // The walk-up answer only moves up as l grows; resume it each time.
      VertexId v = leaf;
      for (std::int64_t l = 2; l <= n + 3; ++l) {
        while (t.parent(v) != kNoVertex && static_cast<std::int64_t>(leaves[t.parent(v)]) < l) {
          v = t.parent(v);
        }
        if (full.query(idx, leaf, l) != v) ++full_mismatch;
        for (std::size_t c = 0; c < coarse_m.size(); ++c) {
          if (l % coarse_m[c] == 0 && coarse[c].coarse_query(idx, leaf, l / coarse_m[c]) != v) {
            ++coarse_mismatch[c];
          }
        }
      }
    }
  }
  report.add(CheckResult::at_most(name + ".full_mismatch", "size ancestor agrees with the walk-up answer",
                                  static_cast<double>(full_mismatch), 0));
  for (std::size_t c = 0; c < coarse_m.size(); ++c) {
    report.add(CheckResult::at_most(name + ".coarse_m" + std::to_string(coarse_m[c]) + "_mismatch",
                                    "coarse size ancestor agrees with the walk-up answer",
                                    static_cast<double>(coarse_mismatch[c]), 0));
  }
}

// lip_um against the brute-force Lipschitz constant on random ultrametrics.
inline void check_lip_um(StatsReport& report, const std::string& name, std::size_t instances,
                         std::size_t max_n, std::uint64_t seed) {
  std::size_t violations = 0;
  double worst = 1;
  for (std::size_t i = 0; i < instances; ++i) {
    Rng rng(derive_seed(seed, 3 * i));
    const auto n = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_n)));
    const LabeledTree t = random_tree(n, static_cast<TreeShape>(i % 3), derive_seed(seed, 3 * i + 1), 0.3);
    const auto targets = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(2 * n)));
    const TargetFunction f = random_function(n, targets, derive_seed(seed, 3 * i + 2));
    const double exact = brute_lipschitz(t, f);
    const double a = lip_um(t, f).value;
    if (!within(a, exact) || !within(exact, 16 * a)) ++violations;
    if (a > 0) worst = std::max(worst, exact / a);
  }
  report.add(CheckResult::at_most(name + ".violations", "|f|_Lip / 16 <= A <= |f|_Lip",
                                  static_cast<double>(violations), 0));
  report.add(CheckResult::at_most(name + ".max_ratio", "|f|_Lip / A <= 16", worst, 16,
                                  16 * kRelativeTolerance));
}

// lip_estimate over restricted chains against the brute-force constant.
inline void check_chain_lipschitz(StatsReport& report, const std::string& name, double k,
                                  std::size_t instances, std::size_t max_n, std::uint64_t seed) {
  static const MetricKind kinds[] = {MetricKind::euclidean(2), MetricKind::graph(0.1),
                                     MetricKind::uniform_matrix(), MetricKind::euclidean(5)};
  const double factor = 2048 * k;
  std::size_t violations = 0;
  double worst = 1;
  for (std::size_t i = 0; i < instances; ++i) {
    Rng rng(derive_seed(seed, 4 * i));
    const auto n = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_n)));
    const MetricSpace m = gen_metric(kinds[i % 4], n, derive_seed(seed, 4 * i + 1));
    const RamseyChain chain = build_chain(m, k, derive_seed(seed, 4 * i + 2), ChainMode::kRestricted);
    const auto targets = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(2 * n)));
    const TargetFunction f = random_function(n, targets, derive_seed(seed, 4 * i + 3));
    const double exact = brute_lipschitz(m, f);
    const double a = lip_estimate(chain, f).value;
    if (!within(a, exact) || !within(exact, factor * a)) ++violations;
    if (a > 0) worst = std::max(worst, exact / a);
  }
  report.add(CheckResult::at_most(name + ".violations", "|f|_Lip / (2048k) <= A <= |f|_Lip",
                                  static_cast<double>(violations), 0));
  report.add(CheckResult::at_most(name + ".max_ratio", "|f|_Lip / A <= 2048k", worst, factor,
                                  factor * kRelativeTolerance));
}

}  // namespace eval
}  // namespace ramsey

#endif  // RAMSEY_EVAL_HPP_
