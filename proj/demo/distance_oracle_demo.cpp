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

// Builds a distance oracle over random points in the plane and compares a
// few answers with the true distances.

#include <cstdio>

#include "ramsey/oracle.hpp"

int main() {
  using namespace ramsey;
  const MetricSpace m = gen_metric(MetricKind::euclidean(2), 500, 42);
  const double k = 2;
  const OracleIndex oracle = build_oracle(m, k, 7);

  const OracleStats stats = oracle_stats(oracle, 10000, 1);
  std::printf("n=%zu levels=%zu stored leaves=%zu worst accesses=%llu\n", stats.n, stats.levels,
              stats.storage_leaves, static_cast<unsigned long long>(stats.max_accesses));

  double worst = 1;
  for (PointId x = 0; x < m.size(); ++x) {
    for (PointId y = x + 1; y < m.size(); ++y) worst = std::max(worst, oracle.query(x, y) / m(x, y));
  }
  std::printf("largest estimate/distance over all pairs: %.3f (guaranteed <= %.0f)\n", worst,
              oracle.chain().distortion_bound());

  for (PointId y : {1u, 2u, 3u, 4u}) {
    std::printf("  d(0,%u) = %.4f  estimate = %.4f\n", y, m(0, y), oracle.query(0, y));
  }
}
