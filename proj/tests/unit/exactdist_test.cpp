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

#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>

#include "orderk/errors.hpp"
#include "orderk/exactdist.hpp"

namespace orderk {
namespace {

// Y(t) as a convolution of the laws of j * Poisson(lambda t), j = 1..i.
std::vector<double> convolution_oracle(const OrderParams& p, int n_max) {
  std::vector<double> acc(static_cast<std::size_t>(n_max) + 1, 0.0);
  acc[0] = 1.0;
  const double mu = p.intensity();
  for (int j = 1; j <= p.order; ++j) {
    std::vector<double> next(acc.size(), 0.0);
    for (int n = 0; n <= n_max; ++n) {
      for (int r = 0; r * j <= n; ++r) {
        next[n] += acc[n - r * j] * std::exp(-mu + r * std::log(mu) - std::lgamma(r + 1.0));
      }
    }
    acc = next;
  }
  return acc;
}

TEST(PmfOrderI, ZeroLevel) {
  for (int i : {1, 2, 4}) {
    const OrderParams p{i, 0.7, 1.3};
    EXPECT_NEAR(pmf_order_i(p, 0), std::exp(-i * 0.7 * 1.3), 1e-15);
  }
}

TEST(PmfOrderI, Examples) {
  EXPECT_NEAR(pmf_order_i({1, 1.0, 1.0}, 2), std::exp(-1.0) / 2.0, 1e-15);
  EXPECT_NEAR(pmf_order_i({2, 1.0, 1.0}, 2), 0.203002924854919, 1e-14);
}

TEST(PmfOrderI, MatchesConvolution) {
  for (int i = 1; i <= 5; ++i) {
    for (double mu : {0.5, 1.0, 3.0}) {
      const OrderParams p{i, mu, 1.0};
      const auto oracle = convolution_oracle(p, 40);
      for (int n = 0; n <= 40; ++n) {
        EXPECT_NEAR(pmf_order_i(p, n), oracle[n], 1e-14 + 1e-12 * oracle[n]) << i << " " << n;
      }
    }
  }
}

TEST(PmfOrderI, TimeZeroIsPointMass) {
  EXPECT_EQ(pmf_order_i({3, 1.0, 0.0}, 0), 1.0);
  EXPECT_EQ(pmf_order_i({3, 1.0, 0.0}, 2), 0.0);
}

TEST(PgfY, Examples) {
  const OrderParams p{2, 1.0, 1.0};
  EXPECT_DOUBLE_EQ(pgf_y(p, 1.0), 1.0);
  EXPECT_NEAR(pgf_y(p, 0.0), std::exp(-2.0), 1e-16);
  EXPECT_NEAR(pgf_y(p, 0.5), 0.286504796860190, 1e-14);
  EXPECT_THROW(pgf_y(p, 1.5), DomainError);
  EXPECT_THROW(pgf_y(p, -0.1), DomainError);
}

TEST(PgfY, AgreesWithPmfSeries) {
  for (int i = 1; i <= 5; ++i) {
    for (double lt : {0.5, 1.0, 3.0}) {
      const OrderParams p{i, lt, 1.0};
      const Pmf pmf = pmf_table_y(p, 1e-12);
      for (int step = 1; step <= 9; ++step) {
        const double u = step / 10.0;
        double series = 0.0;
        for (int n = pmf.n_max(); n >= 0; --n) series = series * u + pmf[n];
        EXPECT_LT(std::abs(series - pgf_y(p, u)), 1e-8);
      }
    }
  }
}

TEST(PmfTableY, NormalizationAndMoments) {
  for (int i : {1, 2, 3, 5}) {
    for (double lt : {0.5, 1.0, 3.0}) {
      const OrderParams p{i, lt, 1.0};
      const Pmf pmf = pmf_table_y(p);
      EXPECT_LT(pmf.tail_bound, 1e-9);
      EXPECT_GE(pmf.mass(), 1.0 - 1e-9);
      EXPECT_LE(pmf.mass(), 1.0 + 1e-12);
      const double mean = lt * i * (i + 1) / 2.0;
      const double var = lt * i * (i + 1) * (2 * i + 1) / 6.0;
      EXPECT_NEAR(pmf.mean() / mean, 1.0, 1e-6);
      EXPECT_NEAR(pmf.variance() / var, 1.0, 1e-6);
    }
  }
}

TEST(ChernoffTailY, BoundsTrueTail) {
  const OrderParams p{3, 1.0, 1.0};
  const auto oracle = convolution_oracle(p, 120);
  for (int n : {0, 5, 10, 20, 40}) {
    double tail = 0.0;
    for (int m = n + 1; m <= 120; ++m) tail += oracle[m];
    EXPECT_GE(chernoff_tail_y(p, n), tail) << n;
  }
}

TEST(PmfWeighted, ReducesToOrderI) {
  for (int i = 1; i <= 5; ++i) {
    const OrderParams p{i, 0.9, 1.1};
    const auto g = WeightTable::identity(i);
    for (int n = 0; n <= 20; ++n) {
      EXPECT_NEAR(pmf_weighted(p, g, n), pmf_order_i(p, n), 1e-15);
    }
  }
}

TEST(PmfWeighted, EvenWeights) {
  const OrderParams p{2, 1.0, 1.0};
  const WeightTable g({2, 4});
  EXPECT_NEAR(pmf_weighted(p, g, 2), std::exp(-2.0), 1e-15);
  EXPECT_EQ(pmf_weighted(p, g, 1), 0.0);
  EXPECT_THROW(pmf_weighted(p, WeightTable({1, 2, 3}), 1), DomainError);
}

TEST(PmfTableZ, NormalizedAndMatchesPgf) {
  const OrderParams p{3, 1.0, 1.0};
  const WeightTable g({1, 3, 4});
  const Pmf pmf = pmf_table_z(p, g);
  EXPECT_GE(pmf.mass(), 1.0 - 1e-9);
  double series = 0.0;
  for (int n = pmf.n_max(); n >= 0; --n) series = series * 0.6 + pmf[n];
  EXPECT_NEAR(series, pgf_weighted(p, g, 0.6), 1e-9);
  EXPECT_NEAR(pmf.mean(), 1.0 * (1 + 3 + 4), 1e-6);
}

TEST(PmfIteratedU, ZeroLevelClosedForm) {
  for (int i : {1, 2, 3}) {
    const OrderParams p{i, 1.0, 1.5};
    const double beta = 0.8;
    const auto v = pmf_iterated_u(p, beta, 0, 1e-15);
    EXPECT_NEAR(v.value, std::exp(-beta * 1.5 * (1.0 - std::exp(-i * 1.0))), 1e-13);
    EXPECT_LE(v.truncation_bound, 1e-15);
  }
}

TEST(PmfIteratedU, OrderOneIsIteratedPoisson) {
  // P[N^a(N^b(t)) = m] = sum_r Poisson(bt)(r) Poisson(a r)(m), summed far out.
  const double a = 1.3;
  const double bt = 0.9;
  for (int m = 0; m <= 12; ++m) {
    double direct = 0.0;
    for (int r = 0; r < 200; ++r) {
      const double w = std::exp(-bt + r * std::log(bt) - std::lgamma(r + 1.0));
      const double inner =
          r == 0 ? (m == 0 ? 1.0 : 0.0)
                 : std::exp(-a * r + m * std::log(a * r) - std::lgamma(m + 1.0));
      direct += w * inner;
    }
    EXPECT_NEAR(pmf_iterated_u({1, a, 1.0}, bt, m, 1e-16).value, direct, 1e-14);
  }
}

TEST(PmfTableU, Normalized) {
  const Pmf pmf = pmf_table_u({2, 1.0, 1.0}, 1.0);
  EXPECT_GE(pmf.mass(), 1.0 - 1e-9);
  EXPECT_LE(pmf.mass() + 0.0, 1.0 + 1e-12);
  EXPECT_LT(pmf.tail_bound, 1e-6);
  // E[U] = beta t * i(i+1)/2 * lambda
  EXPECT_NEAR(pmf.mean(), 3.0, 1e-6);
}

TEST(JumpLawY, Uniform) {
  const auto q1 = jump_law_y(1);
  EXPECT_EQ(q1.sizes, std::vector<int>{1});
  EXPECT_EQ(q1[1], 1.0);
  const auto q4 = jump_law_y(4);
  for (int j = 1; j <= 4; ++j) EXPECT_DOUBLE_EQ(q4[j], 0.25);
  EXPECT_NEAR(q4.total(), 1.0, 1e-15);
}

TEST(JumpLawZ, AggregatesTies) {
  const auto q = jump_law_z(WeightTable({2, 2, 5}));
  EXPECT_EQ(q.sizes, (std::vector<int>{2, 5}));
  EXPECT_NEAR(q[2], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(q[5], 1.0 / 3.0, 1e-15);
  EXPECT_EQ(jump_law_z(WeightTable({7}))[7], 1.0);
  const auto q3 = jump_law_z(WeightTable::identity(3));
  const auto y3 = jump_law_y(3);
  EXPECT_EQ(q3.sizes, y3.sizes);
}

// Coefficients of 1 - (1 - S(u)/i)^alpha with S(u) = u + ... + u^i, by the
// power recurrence for (1 - c)^alpha.
std::vector<double> stable_jump_series(int order, double alpha, int h_max) {
  std::vector<double> a(static_cast<std::size_t>(h_max) + 1, 0.0);
  a[0] = 1.0;
  for (int j = 1; j <= std::min(order, h_max); ++j) a[j] = -1.0 / order;
  std::vector<double> b(a.size(), 0.0);
  b[0] = 1.0;
  for (int n = 1; n <= h_max; ++n) {
    double s = 0.0;
    for (int k = 1; k <= std::min(n, order); ++k) s += ((alpha + 1.0) * k - n) * a[k] * b[n - k];
    b[n] = s / n;
  }
  std::vector<double> q(a.size(), 0.0);
  for (int h = 1; h <= h_max; ++h) q[h] = -b[h];
  return q;
}

TEST(JumpLawW, StableOrderOneFirstSizeIsAlpha) {
  for (double alpha : {0.3, 0.5, 0.8}) {
    const auto q = jump_law_w(BernsteinFn::stable(alpha), {1, 1.0, 1.0}, 5);
    EXPECT_NEAR(q[1], alpha, 1e-15);
  }
}

TEST(JumpLawW, StableMatchesPowerSeries) {
  for (int i : {1, 2, 3}) {
    for (double alpha : {0.3, 0.5, 0.8}) {
      for (double lambda : {0.5, 2.0}) {
        const int h_max = 200;
        const auto q = jump_law_w(BernsteinFn::stable(alpha), {i, lambda, 1.0}, h_max);
        const auto oracle = stable_jump_series(i, alpha, h_max);
        for (int h = 1; h <= h_max; ++h) {
          EXPECT_NEAR(q[h], oracle[h], 1e-12 + 1e-9 * oracle[h]) << i << " " << alpha << " " << h;
        }
      }
    }
  }
}

TEST(JumpLawW, StableOrderOneResidualIsExactTail) {
  // For i = 1 the mass above H is Gamma(H+1-a) / (Gamma(1-a) Gamma(H+1)).
  for (double alpha : {0.3, 0.5, 0.8}) {
    for (int h_max : {10, 50, 200}) {
      const auto q = jump_law_w(BernsteinFn::stable(alpha), {1, 1.0, 1.0}, h_max);
      const double tail = std::exp(std::lgamma(h_max + 1.0 - alpha) - std::lgamma(1.0 - alpha) -
                                   std::lgamma(h_max + 1.0));
      EXPECT_NEAR(q.residual_mass, tail, 1e-12);
    }
  }
}

TEST(JumpLawW, HeavyTailLeavesMassAbove200) {
  // i = 2, stable(0.5): about 4.9% of the jump law sits above size 200.
  const auto q = jump_law_w(BernsteinFn::stable(0.5), {2, 1.0, 1.0}, 200);
  EXPECT_NEAR(q.total(), 0.9511498930014248, 1e-10);
  EXPECT_NEAR(q.residual_mass, 0.0488501069985752, 1e-10);
  EXPECT_NEAR(q[1], 0.25, 1e-15);
  EXPECT_NEAR(q[2], 0.28125, 1e-15);
  EXPECT_NEAR(q[3], 0.0703125, 1e-15);
}

TEST(JumpLawW, LinearReducesToY) {
  for (int i : {1, 2, 4}) {
    const auto q = jump_law_w(BernsteinFn::linear(2.5), {i, 0.7, 1.0}, 10);
    for (int h = 1; h <= 10; ++h) {
      EXPECT_NEAR(q[h], h <= i ? 1.0 / i : 0.0, 1e-14) << i << " " << h;
    }
  }
}

TEST(JumpLawW, GammaMatchesLogSeries) {
  // f(x) = a log(1 + x/b): q(h) = a sum_m [u^h] (lambda S / (b + i lambda))^m / m / f(i lambda).
  const double a = 1.5;
  const double b = 2.0;
  const int i = 2;
  const double lambda = 1.0;
  const int h_max = 12;
  const double c = lambda / (b + i * lambda);
  std::vector<double> power(h_max + 1, 0.0);  // coefficients of (c S)^m
  power[0] = 1.0;
  std::vector<double> q_oracle(h_max + 1, 0.0);
  for (int m = 1; m <= h_max; ++m) {
    std::vector<double> next(h_max + 1, 0.0);
    for (int n = 0; n <= h_max; ++n) {
      for (int j = 1; j <= i && n + j <= h_max; ++j) next[n + j] += c * power[n];
    }
    power = next;
    for (int h = 1; h <= h_max; ++h) q_oracle[h] += a * power[h] / m;
  }
  const double total_rate = a * std::log1p(i * lambda / b);
  const auto q = jump_law_w(BernsteinFn::gamma(a, b), {i, lambda, 1.0}, h_max);
  for (int h = 1; h <= h_max; ++h) {
    EXPECT_NEAR(q[h], q_oracle[h] / total_rate, 1e-12) << h;
  }
}

TEST(JumpLawU, Examples) {
  const auto q = jump_law_u({1, 1.0, 1.0});
  EXPECT_NEAR(q[1], 0.581976706869326, 1e-14);
  for (int i : {1, 2, 3}) {
    for (double lambda : {0.5, 1.0, 2.0}) {
      const auto qu = jump_law_u({i, lambda, 1.0});
      EXPECT_NEAR(qu[1], lambda * std::exp(-i * lambda) / -std::expm1(-i * lambda), 1e-15);
      EXPECT_NEAR(qu.total(), 1.0, 1e-13);
      EXPECT_LT(qu.residual_mass, 1e-13);
    }
  }
}

TEST(PoissonHelpers, TailBoundDominates) {
  for (double mean : {0.5, 3.0, 20.0}) {
    for (int r : {0, 5, 30, 60}) {
      const double exact = boost::math::gamma_p(r + 1.0, mean);  // P[Poisson > r]
      EXPECT_GE(poisson_tail_bound(mean, r) * (1 + 1e-12), exact) << mean << " " << r;
    }
  }
  EXPECT_EQ(poisson_tail_bound(10.0, 3), 1.0);
  EXPECT_NEAR(poisson_pmf(2.0, 3), std::exp(-2.0) * 8.0 / 6.0, 1e-16);
}

}  // namespace
}  // namespace orderk
