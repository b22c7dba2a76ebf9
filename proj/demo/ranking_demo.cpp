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

// Lists points in approximate order of distance from a query point, and
// looks up the position of a given point in that order.

#include <cstdio>

#include "ramsey/ranking.hpp"

int main() {
  using namespace ramsey;
  const MetricSpace m = gen_metric(MetricKind::euclidean(2), 200, 5);
  const RankingIndex ranking = build_ranking(m, 2, 11);

  const PointId x = 17;
  std::printf("first ten points in the order around %u:\n", x);
  for (std::int64_t i = 1; i <= 10; ++i) {
    const PointId p = ranking.access(x, i);
    std::printf("  %2lld: point %3u at distance %.4f\n", static_cast<long long>(i), p, m(x, p));
  }

  // The true nearest neighbour and where the ranking puts it.
  PointId nearest = x == 0 ? 1 : 0;
  for (PointId y = 0; y < m.size(); ++y) {
    if (y != x && m(x, y) < m(x, nearest)) nearest = y;
  }
  std::printf("nearest neighbour %u has rank %lld\n", nearest,
              static_cast<long long>(ranking.rank_of(x, nearest)));

  const RankingQuality q = ranking_quality(ranking, m);
  std::printf("worst inversion ratio %.3f (guaranteed <= %.0f)\n", q.max_ratio, q.bound);
}
