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

#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "orderk/errors.hpp"
#include "orderk/hitting.hpp"

namespace orderk {
namespace {

TEST(PaperHitY, Examples) {
  EXPECT_DOUBLE_EQ(paper_hit_prob_y(5, 3), 0.6);
  EXPECT_EQ(paper_hit_prob_y(5, 7), 1.0);
  for (int k : {1, 2, 9}) EXPECT_EQ(paper_hit_prob_y(1, k), 1.0);
  EXPECT_THROW(paper_hit_prob_y(2, 0), DomainError);
}

TEST(PaperHitZ, Examples) {
  EXPECT_DOUBLE_EQ(paper_hit_prob_z(WeightTable::identity(3), 2), 2.0 / 3.0);
  EXPECT_EQ(paper_hit_prob_z(WeightTable({2, 4}), 1), 0.0);
  EXPECT_EQ(paper_hit_prob_z(WeightTable({2, 4}), 4), 1.0);
}

TEST(PaperHitDensityZ, Examples) {
  for (double lambda : {0.5, 2.0}) {
    for (double s : {0.3, 1.0}) {
      EXPECT_NEAR(paper_hit_density_z(WeightTable({1}), {1, lambda, 1.0}, 1, s),
                  lambda * std::exp(-lambda * s), 1e-15);
    }
  }
  EXPECT_NEAR(paper_hit_density_z(WeightTable({1, 2}), {2, 1.0, 1.0}, 1, 1.0), std::exp(-2.0),
              1e-15);
  EXPECT_THROW(paper_hit_density_z(WeightTable({1}), {1, 1.0, 1.0}, 1, 0.0), DomainError);
}

TEST(PaperHitDensityZ, IntegratesToIntegralForm) {
  boost::math::quadrature::exp_sinh<double> integrator;
  for (const auto& g : {WeightTable({1, 2}), WeightTable({1, 3, 4}), WeightTable({2, 2, 5})}) {
    const OrderParams p{g.order(), 1.3, 1.0};
    for (int k = 1; k <= 6; ++k) {
      const double area =
          integrator.integrate([&](double s) { return paper_hit_density_z(g, p, k, s); });
      EXPECT_NEAR(area, integral_form_hit_prob(jump_law_z(g), k), 1e-6) << g.to_string() << " " << k;
    }
  }
}

JumpLaw uniform_law(int m) { return jump_law_y(m); }

TEST(IntegralForm, Examples) {
  for (int k : {1, 4, 30}) EXPECT_EQ(integral_form_hit_prob(uniform_law(1), k), 1.0);
  EXPECT_DOUBLE_EQ(integral_form_hit_prob(uniform_law(2), 1), 0.5);
  EXPECT_NEAR(integral_form_hit_prob(uniform_law(3), 2), 4.0 / 9.0, 1e-16);
}

TEST(Oracle, Examples) {
  for (int k : {1, 2, 17}) EXPECT_EQ(oracle_hit_prob(jump_law_y(1), k), 1.0);
  EXPECT_NEAR(oracle_hit_prob(jump_law_y(3), 2), 4.0 / 9.0, 1e-16);
  EXPECT_NEAR(oracle_hit_prob(jump_law_y(2), 50), 2.0 / 3.0, 1e-6);
}

TEST(Oracle, RenewalLimit) {
  for (int i = 1; i <= 5; ++i) {
    EXPECT_NEAR(oracle_hit_prob(jump_law_y(i), 200), 2.0 / (i + 1), 1e-6) << i;
  }
}

TEST(Oracle, VisitProbsStartAtOne) {
  const auto v = renewal_visit_probs(jump_law_y(3), 4);
  ASSERT_EQ(v.size(), 5u);
  EXPECT_EQ(v[0], 1.0);
  EXPECT_NEAR(v[1], 1.0 / 3.0, 1e-16);
  EXPECT_NEAR(v[2], 4.0 / 9.0, 1e-16);
  EXPECT_NEAR(v[3], (1.0 + 1.0 / 3.0 + 4.0 / 9.0) / 3.0, 1e-16);
}

TEST(Oracle, IntegralFormIsIdentical) {
  const std::vector<JumpLaw> laws{
      jump_law_y(2), jump_law_y(5), jump_law_z(WeightTable({2, 3, 3, 8})),
      jump_law_u({2, 1.0, 1.0}), jump_law_w(BernsteinFn::stable(0.4), {2, 1.0, 1.0}, 40)};
  for (const auto& q : laws) {
    for (int k = 1; k <= 40; ++k) {
      EXPECT_NEAR(integral_form_hit_prob(q, k), oracle_hit_prob(q, k), 1e-12);
    }
  }
}

TEST(PaperHitW, LinearOrderOneAlwaysHits) {
  for (int k = 1; k <= 6; ++k) {
    EXPECT_NEAR(paper_hit_prob_w(BernsteinFn::linear(1.0), {1, 1.0, 1.0}, k), 1.0, 1e-12);
  }
}

TEST(PaperHitW, StableOrderOneLevelOneIsAlpha) {
  for (double alpha : {0.3, 0.5, 0.8}) {
    const auto f = BernsteinFn::stable(alpha);
    EXPECT_NEAR(paper_hit_prob_w(f, {1, 1.0, 1.0}, 1), alpha, 1e-14);
    EXPECT_NEAR(oracle_hit_prob(jump_law_w(f, {1, 1.0, 1.0}, 1), 1), alpha, 1e-14);
  }
}

TEST(PaperHitW, MatchesOracleAtWideTruncation) {
  const auto f = BernsteinFn::stable(0.5);
  const OrderParams p{2, 1.0, 1.0};
  EXPECT_NEAR(paper_hit_prob_w(f, p, 3), oracle_hit_prob(jump_law_w(f, p, 200), 3), 1e-6);
}

TEST(PaperHitW, StableConsistency) {
  for (double alpha : {0.3, 0.5, 0.8}) {
    for (int i : {1, 2, 3}) {
      for (double lambda : {0.5, 1.0, 2.0}) {
        const auto f = BernsteinFn::stable(alpha);
        const OrderParams p{i, lambda, 1.0};
        for (int k = 1; k <= 6; ++k) {
          const double paper = paper_hit_prob_w(f, p, k);
          const double oracle = oracle_hit_prob(jump_law_w(f, p, k), k);
          EXPECT_NEAR(paper, oracle, 1e-6) << alpha << " " << i << " " << lambda << " " << k;
          EXPECT_GE(oracle, 0.0);
          EXPECT_LE(oracle, 1.0);
        }
      }
    }
  }
}

TEST(PaperHitW, GammaAndPoissonClocksUseFallback) {
  for (const auto& f : {BernsteinFn::gamma(1.5, 2.0), BernsteinFn::poisson(2.0)}) {
    const OrderParams p{2, 1.0, 1.0};
    for (int k = 1; k <= 5; ++k) {
      EXPECT_NEAR(paper_hit_prob_w(f, p, k), oracle_hit_prob(jump_law_w(f, p, k), k), 1e-5)
          << f.to_string() << " " << k;
    }
  }
}

TEST(PaperHitW, PoissonClockMatchesU) {
  const OrderParams p{2, 1.0, 1.0};
  const auto wq = jump_law_w(BernsteinFn::poisson(1.0), p, 8);
  const auto uq = jump_law_u(p);
  for (int h = 1; h <= 8; ++h) EXPECT_NEAR(wq[h], uq[h], 1e-13) << h;
}

TEST(PaperHitW, DerivativeOrderLimit) {
  EXPECT_THROW(paper_hit_prob_w(BernsteinFn::gamma(1.0, 1.0), {1, 1.0, 1.0},
                                kMaxFallbackDerivativeOrder + 2),
               DerivativeUnavailable);
}

TEST(PaperHitU, Examples) {
  EXPECT_NEAR(paper_hit_prob_u({2, 1.0, 1.0}, 1), 0.156517642749666, 1e-14);
  for (double lambda : {0.3, 1.0, 2.0}) {
    EXPECT_NEAR(paper_hit_prob_u({1, lambda, 1.0}, 1),
                lambda * std::exp(-lambda) / (1.0 - std::exp(-lambda)), 1e-15);
    for (int i : {1, 2, 3}) {
      const double t1 = paper_hit_prob_u({i, lambda, 1.0}, 1);
      const double t2 = paper_hit_prob_u({i, lambda, 1.0}, 2);
      EXPECT_GT(t2, t1);
      EXPECT_LT(t2, 1.0);
    }
  }
  EXPECT_THROW(paper_hit_prob_u({2, 1.0, 1.0}, 3), UnsupportedQuery);
}

TEST(PaperHitU, MatchesOracle) {
  for (int i : {1, 2, 3}) {
    for (double lambda : {0.5, 1.0, 2.0}) {
      const OrderParams p{i, lambda, 1.0};
      const auto q = jump_law_u(p);
      for (int k : {1, 2}) EXPECT_NEAR(paper_hit_prob_u(p, k), oracle_hit_prob(q, k), 1e-9);
    }
  }
}

TEST(PaperHitU, SimplifiedFormNeedsOrderTwo) {
  for (double lambda : {0.5, 1.0}) {
    for (int i : {2, 3}) {
      const OrderParams p{i, lambda, 1.0};
      EXPECT_NEAR(paper_hit_prob_u2_simplified(p), paper_hit_prob_u(p, 2), 1e-15);
    }
    // i = 1 has no size-2 component, so the lambda term in (1 + lambda/2) is absent.
    const OrderParams p1{1, lambda, 1.0};
    EXPECT_GT(std::abs(paper_hit_prob_u2_simplified(p1) - paper_hit_prob_u(p1, 2)), 0.1);
  }
}

TEST(IteratedGeneral, LevelOneCollapses) {
  for (double a : {0.5, 1.0, 2.0}) {
    EXPECT_NEAR(iterated_hit_prob_general(a, 1), a * std::exp(-a) / (1.0 - std::exp(-a)), 1e-14);
    EXPECT_NEAR(iterated_hit_prob_general(a, 1), paper_hit_prob_u({1, a, 1.0}, 1), 1e-14);
  }
}

TEST(IteratedGeneral, MatchesOracle) {
  EXPECT_NEAR(iterated_hit_prob_general(2.0, 2), oracle_hit_prob(jump_law_u({1, 2.0, 1.0}), 2),
              1e-9);
  for (double a : {0.5, 1.0, 3.0}) {
    const auto q = jump_law_u({1, a, 1.0});
    for (int k = 1; k <= 8; ++k) {
      EXPECT_NEAR(iterated_hit_prob_general(a, k), oracle_hit_prob(q, k), 1e-9) << a << " " << k;
    }
  }
}

TEST(IteratedGeneral, PartialSumsIncrease) {
  double prev = 0.0;
  for (double eps : {1e-2, 1e-4, 1e-8, 1e-16}) {
    const double v = iterated_hit_prob_general(1.0, 4, eps);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

SimConfig mc_config(std::uint64_t n, std::uint64_t seed) {
  SimConfig cfg;
  cfg.n_paths = n;
  cfg.seed = seed;
  return cfg;
}

HitQuery y_query(int i, int k) {
  HitQuery q;
  q.process = ProcessKind::kY;
  q.params = {i, 1.0, 1.0};
  q.level = k;
  return q;
}

TEST(McHit, UnitJumpsHitExactly) {
  const auto est = mc_hit_prob(y_query(1, 5), mc_config(100000, 1));
  EXPECT_EQ(est.estimate, 1.0);
  EXPECT_EQ(est.hits, 100000u);
  EXPECT_EQ(est.halfwidth_95, 0.0);
}

TEST(McHit, OrderThreeLevelTwo) {
  const auto est = mc_hit_prob(y_query(3, 2), mc_config(1000000, 2));
  EXPECT_NEAR(est.estimate, 4.0 / 9.0, kOracleMcHalfwidths * est.halfwidth_95);
}

TEST(McHit, ULevelOne) {
  HitQuery q;
  q.process = ProcessKind::kU;
  q.params = {2, 1.0, 1.0};
  q.beta = 1.0;
  q.level = 1;
  const auto est = mc_hit_prob(q, mc_config(1000000, 3));
  EXPECT_NEAR(est.estimate, 0.156517642749666, kOracleMcHalfwidths * est.halfwidth_95);
}

TEST(McHit, RequiresThousandPaths) {
  EXPECT_THROW(mc_hit_prob(y_query(2, 1), mc_config(999, 1)), DomainError);
}

TEST(McHit, Deterministic) {
  const auto a = mc_hit_prob(y_query(4, 3), mc_config(20000, 9));
  const auto b = mc_hit_prob(y_query(4, 3), mc_config(20000, 9));
  EXPECT_EQ(a.hits, b.hits);
}

TEST(HitReport, OrderOneAllAgree) {
  const auto r = hit_report(y_query(1, 3), mc_config(100000, 4));
  EXPECT_EQ(*r.paper_value, 1.0);
  EXPECT_EQ(r.oracle_value, 1.0);
  EXPECT_EQ(r.mc.estimate, 1.0);
  EXPECT_TRUE(*r.paper_oracle_agree);
  EXPECT_TRUE(r.oracle_mc_agree);
}

TEST(HitReport, OrderThreeDisagreementIsReported) {
  const auto r = hit_report(y_query(3, 2), mc_config(1000000, 5));
  EXPECT_NEAR(*r.paper_value, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.oracle_value, 4.0 / 9.0, 1e-15);
  EXPECT_FALSE(*r.paper_oracle_agree);
  EXPECT_TRUE(r.oracle_mc_agree);
}

TEST(HitReport, UThreeWay) {
  HitQuery q;
  q.process = ProcessKind::kU;
  q.params = {2, 1.0, 1.0};
  q.beta = 1.0;
  q.level = 2;
  const auto r = hit_report(q, mc_config(1000000, 6));
  ASSERT_TRUE(r.paper_value.has_value());
  EXPECT_TRUE(*r.paper_oracle_agree);
  EXPECT_TRUE(r.oracle_mc_agree);
  EXPECT_NEAR(r.mc.estimate, *r.paper_value, 3 * r.mc.halfwidth_95);
}

TEST(HitReport, UHigherLevelWithoutClosedForm) {
  HitQuery q;
  q.process = ProcessKind::kU;
  q.params = {2, 1.0, 1.0};
  q.beta = 1.0;
  q.level = 4;
  const auto r = hit_report(q, mc_config(10000, 7));
  EXPECT_FALSE(r.paper_value.has_value());
  EXPECT_FALSE(r.paper_oracle_agree.has_value());
  q.params.order = 1;
  const auto r1 = hit_report(q, mc_config(10000, 7));
  ASSERT_TRUE(r1.paper_value.has_value());
  EXPECT_TRUE(*r1.paper_oracle_agree);
}

TEST(HitReport, WCarriesResidualMass) {
  HitQuery q;
  q.process = ProcessKind::kW;
  q.params = {2, 1.0, 1.0};
  q.bernstein = BernsteinFn::stable(0.5);
  q.level = 3;
  const auto r = hit_report(q, mc_config(200000, 8));
  EXPECT_GT(r.truncated_mass, 0.0);
  EXPECT_TRUE(*r.paper_oracle_agree);
  EXPECT_TRUE(r.oracle_mc_agree);
}

TEST(HitQuery, Validation) {
  HitQuery q = y_query(2, 0);
  EXPECT_THROW(validate_query(q), DomainError);
  q.level = 1;
  q.process = ProcessKind::kZ;
  EXPECT_THROW(validate_query(q), DomainError);
  q.weights = WeightTable({1, 2, 3});
  EXPECT_THROW(validate_query(q), DomainError);
  q.weights = WeightTable({1, 2});
  EXPECT_NO_THROW(validate_query(q));
  q.process = ProcessKind::kW;
  EXPECT_THROW(validate_query(q), DomainError);
  q.process = ProcessKind::kU;
  EXPECT_THROW(validate_query(q), DomainError);
  EXPECT_EQ(parse_process_kind("w"), ProcessKind::kW);
  EXPECT_THROW(parse_process_kind("x"), DomainError);
}

}  // namespace
}  // namespace orderk
