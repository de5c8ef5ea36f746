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

// Weighted integer compositions: all x in N^i with sum_j w_j x_j = n.
//
// Every exact formula in the library is a sum over such a set. The
// enumeration walks coordinates left to right, giving each coordinate its
// largest feasible value first, so the output is in descending lexicographic
// order on (x_1, ..., x_i): for n = 3 and w = (1, 2, 3) it yields (3,0,0),
// (1,1,0), (0,0,1).

#ifndef ORDERK_COMPOSITIONS_HPP_
#define ORDERK_COMPOSITIONS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "orderk/errors.hpp"
#include "orderk/params.hpp"

namespace orderk {

namespace detail {

template <typename Visitor>
void visit_compositions(std::span<const int> w, std::size_t coord, int remaining,
                        std::vector<int>& counts, Visitor& visit) {
  const int weight = w[coord];
  if (coord + 1 == w.size()) {
    if (remaining % weight == 0) {
      counts[coord] = remaining / weight;
      visit(std::span<const int>(counts));
    }
    return;
  }
  for (int x = remaining / weight; x >= 0; --x) {
    counts[coord] = x;
    visit_compositions(w, coord + 1, remaining - x * weight, counts, visit);
  }
  counts[coord] = 0;
}

}  // namespace detail

// Calls `visit(std::span<const int> counts)` once per composition of `n`
// under weights `w`, in descending lexicographic order. The span is only
// valid for the duration of the call.
template <typename Visitor>
void for_each_composition(int n, std::span<const int> w, Visitor&& visit) {
  if (n < 0) {
    throw DomainError("composition target must be nonnegative");
  }
  if (w.empty()) return;
  std::vector<int> counts(w.size(), 0);
  detail::visit_compositions(w, 0, n, counts, visit);
}

template <typename Visitor>
void for_each_composition(int n, const WeightTable& w, Visitor&& visit) {
  for_each_composition(n, w.weights(), std::forward<Visitor>(visit));
}

// Materialized enumeration; empty when n is unreachable.
std::vector<Composition> enumerate_compositions(int n, const WeightTable& w);

// Size of the composition set, counted by dynamic programming over weights
// (independent of the enumeration).
std::uint64_t count_compositions(int n, const WeightTable& w);

}  // namespace orderk

#endif  // ORDERK_COMPOSITIONS_HPP_
