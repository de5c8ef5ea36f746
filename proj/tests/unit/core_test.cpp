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

#include <algorithm>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "orderk/compositions.hpp"
#include "orderk/errors.hpp"
#include "orderk/params.hpp"

namespace orderk {
namespace {

TEST(ValidateParams, AcceptsInDomain) {
  const OrderParams p{3, 1.0, 2.0};
  EXPECT_EQ(validate_params(p), p);
}

TEST(ValidateParams, RejectsOrderZero) {
  EXPECT_THROW(validate_params({0, 1.0, 1.0}), DomainError);
}

TEST(ValidateParams, RejectsNonpositiveRate) {
  EXPECT_THROW(validate_params({2, -1.0, 1.0}), DomainError);
  EXPECT_THROW(validate_params({2, 0.0, 1.0}), DomainError);
}

TEST(ValidateParams, RejectsNegativeTimeAcceptsZero) {
  EXPECT_THROW(validate_params({1, 1.0, -0.5}), DomainError);
  EXPECT_NO_THROW(validate_params({1, 1.0, 0.0}));
}

TEST(WeightTable, ParseAndValidate) {
  const auto g = WeightTable::parse("2,4");
  EXPECT_EQ(g.order(), 2);
  EXPECT_EQ(g(1), 2);
  EXPECT_EQ(g(2), 4);
  EXPECT_EQ(g.to_string(), "2,4");
  EXPECT_NO_THROW(WeightTable({2, 2, 5}));
  EXPECT_THROW(WeightTable({3, 1}), DomainError);
  EXPECT_THROW(WeightTable({0, 1}), DomainError);
  EXPECT_THROW(WeightTable(std::vector<int>{}), DomainError);
  EXPECT_THROW(WeightTable::parse("1,x"), DomainError);
}

std::vector<std::vector<int>> counts_of(const std::vector<Composition>& cs) {
  std::vector<std::vector<int>> out;
  for (const auto& c : cs) out.push_back(c.counts);
  return out;
}

TEST(EnumerateCompositions, ZeroTarget) {
  const auto cs = enumerate_compositions(0, WeightTable::identity(3));
  EXPECT_EQ(counts_of(cs), (std::vector<std::vector<int>>{{0, 0, 0}}));
}

TEST(EnumerateCompositions, ThreeOverOneTwoThree) {
  const auto cs = enumerate_compositions(3, WeightTable::identity(3));
  EXPECT_EQ(counts_of(cs), (std::vector<std::vector<int>>{{3, 0, 0}, {1, 1, 0}, {0, 0, 1}}));
}

TEST(EnumerateCompositions, UnreachableIsEmpty) {
  EXPECT_TRUE(enumerate_compositions(3, WeightTable({2, 4})).empty());
}

TEST(EnumerateCompositions, NegativeTargetThrows) {
  EXPECT_THROW(enumerate_compositions(-1, WeightTable::identity(2)), DomainError);
}

// Nested loops over the box prod_j [0, n / j].
std::set<std::vector<int>> brute_force(int n, int order) {
  std::set<std::vector<int>> out;
  std::vector<int> x(static_cast<std::size_t>(order), 0);
  auto rec = [&](auto&& self, int j, int sum) -> void {
    if (j == order) {
      if (sum == n) out.insert(x);
      return;
    }
    for (int v = 0; sum + v * (j + 1) <= n; ++v) {
      x[static_cast<std::size_t>(j)] = v;
      self(self, j + 1, sum + v * (j + 1));
    }
    x[static_cast<std::size_t>(j)] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

TEST(EnumerateCompositions, MatchesBruteForce) {
  for (int order = 1; order <= 6; ++order) {
    const auto w = WeightTable::identity(order);
    for (int n = 0; n <= 30; ++n) {
      const auto cs = enumerate_compositions(n, w);
      const auto expected = brute_force(n, order);
      ASSERT_EQ(cs.size(), expected.size()) << "i=" << order << " n=" << n;
      std::set<std::vector<int>> seen;
      for (const auto& c : cs) {
        std::int64_t s = 0;
        for (int j = 0; j < order; ++j) s += static_cast<std::int64_t>(j + 1) * c.counts[j];
        EXPECT_EQ(s, c.weighted_sum);
        EXPECT_EQ(c.weighted_sum, n);
        seen.insert(c.counts);
      }
      EXPECT_EQ(seen, expected);
      EXPECT_EQ(count_compositions(n, w), expected.size());
    }
  }
}

TEST(EnumerateCompositions, DescendingLexicographicAndDeterministic) {
  const WeightTable w({1, 2, 2, 5});
  const auto a = enumerate_compositions(17, w);
  const auto b = enumerate_compositions(17, w);
  EXPECT_EQ(a, b);
  const auto counts = counts_of(a);
  EXPECT_TRUE(std::is_sorted(counts.rbegin(), counts.rend()));
}

TEST(CountCompositions, Examples) {
  EXPECT_EQ(count_compositions(0, WeightTable({3, 7})), 1u);
  EXPECT_EQ(count_compositions(3, WeightTable::identity(3)), 3u);
  EXPECT_EQ(count_compositions(2, WeightTable({2, 4})), 1u);
}

TEST(CountCompositions, TiesCountedSeparately) {
  // (1,0) and (0,1) both realize 2.
  EXPECT_EQ(count_compositions(2, WeightTable({2, 2})), 2u);
  EXPECT_EQ(enumerate_compositions(2, WeightTable({2, 2})).size(), 2u);
}

}  // namespace
}  // namespace orderk
