// Copyright 2026 The orderk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "orderk/compositions.hpp"

namespace orderk {

std::vector<Composition> enumerate_compositions(int n, const WeightTable& w) {
  std::vector<Composition> out;
  for_each_composition(n, w, [&](std::span<const int> counts) {
    out.push_back(Composition{{counts.begin(), counts.end()}, n});
  });
  return out;
}

std::uint64_t count_compositions(int n, const WeightTable& w) {
  if (n < 0) {
    throw DomainError("composition target must be nonnegative");
  }
  // Coin-change count: ways[m] over the first j weights. Tied weights are
  // distinct coordinates and are counted separately.
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(n) + 1, 0);
  ways[0] = 1;
  for (int weight : w.weights()) {
    for (int m = weight; m <= n; ++m) {
      ways[static_cast<std::size_t>(m)] += ways[static_cast<std::size_t>(m - weight)];
    }
  }
  return ways[static_cast<std::size_t>(n)];
}

}  // namespace orderk
