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

// Estimates the Lipschitz constant of a random map from a point set into a
// grid, and compares the estimate with the exact value.

#include <cstdio>

#include "ramsey/generators.hpp"
#include "ramsey/lipschitz.hpp"

int main() {
  using namespace ramsey;
  const std::size_t n = 300;
  const MetricSpace m = gen_metric(MetricKind::euclidean(3), n, 9);
  const TargetFunction f = random_function(n, 50, 4);

  const RamseyChain chain = build_chain(m, 2, 3, ChainMode::kRestricted);
  const LipEstimate est = lip_estimate(chain, f);
  const double exact = brute_lipschitz(m, f);
  std::printf("estimate A = %.4f\n", est.value);
  std::printf("exact      = %.4f\n", exact);
  std::printf("A <= exact <= %.0f A: %s\n", est.lower_factor,
              est.value <= exact && exact <= est.lower_factor * est.value ? "yes" : "no");

  // On an ultrametric the guarantee is much tighter.
  const LabeledTree t = random_tree(n, TreeShape::kBushy, 8);
  const LipEstimate tree_est = lip_um(t, f);
  std::printf("ultrametric: estimate %.4f, exact %.4f, factor bound %.0f\n", tree_est.value,
              brute_lipschitz(t, f), tree_est.lower_factor);
}
