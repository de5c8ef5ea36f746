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

#include "orderk/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "orderk/compositions.hpp"
#include "orderk/errors.hpp"
#include "orderk/stats.hpp"

namespace orderk {

namespace {

void require_level(int k) {
  if (k < 1) throw DomainError("target level k must be >= 1");
}

double factorial_product(std::span<const int> counts) {
  double prod = 1.0;
  for (int x : counts) prod *= std::tgamma(x + 1.0);
  return prod;
}

// sum over compositions of m (weights 1..i) of
//   (-lambda)^n / (x! i^n) * d^n/dlambda^n [g(i lambda)],
// where d^n/dlambda^n g(i lambda) = i^n g^(n)(i lambda) is supplied by
// `arg_deriv(n)` = g^(n)(i lambda).
template <typename ArgDeriv>
double lambda_derivative_sum(int m, const OrderParams& p, ArgDeriv arg_deriv) {
  const int i = p.order;
  const double lambda = p.rate;
  double total = 0.0;
  for_each_composition(m, WeightTable::identity(i), [&](std::span<const int> counts) {
    const int n = std::accumulate(counts.begin(), counts.end(), 0);
    const double lambda_deriv = std::pow(static_cast<double>(i), n) * arg_deriv(n);
    const double coeff = std::pow(-lambda, n) /
                         (factorial_product(counts) * std::pow(static_cast<double>(i), n));
    total += coeff * lambda_deriv;
  });
  return total;
}

}  // namespace

const char* to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::kY:
      return "y";
    case ProcessKind::kZ:
      return "z";
    case ProcessKind::kW:
      return "w";
    case ProcessKind::kU:
      return "u";
  }
  return "?";
}

ProcessKind parse_process_kind(const std::string& text) {
  if (text == "y" || text == "Y") return ProcessKind::kY;
  if (text == "z" || text == "Z") return ProcessKind::kZ;
  if (text == "w" || text == "W") return ProcessKind::kW;
  if (text == "u" || text == "U") return ProcessKind::kU;
  throw DomainError("process must be one of y, z, w, u; got '" + text + "'");
}

HitQuery validate_query(const HitQuery& q) {
  validate_params(q.params);
  require_level(q.level);
  switch (q.process) {
    case ProcessKind::kY:
      break;
    case ProcessKind::kZ:
      if (!q.weights) throw DomainError("process z requires a weight table");
      if (q.weights->order() != q.params.order) {
        throw DomainError("weight table length must equal the order i");
      }
      break;
    case ProcessKind::kW:
      if (!q.bernstein) throw DomainError("process w requires a Bernstein function");
      break;
    case ProcessKind::kU:
      if (!q.beta || !(*q.beta > 0.0)) throw DomainError("process u requires beta > 0");
      break;
  }
  return q;
}

double paper_hit_prob_y(int order, int k) {
  if (order < 1) throw DomainError("order i must be >= 1");
  require_level(k);
  if (k <= order - 1) return static_cast<double>(k) / order;
  return 1.0;
}

double paper_hit_prob_z(const WeightTable& g, int k) {
  require_level(k);
  if (k >= g.max_weight()) return 1.0;
  const auto w = g.weights();
  const auto reachable = std::count_if(w.begin(), w.end(), [k](int gh) { return gh <= k; });
  return static_cast<double>(reachable) / g.order();
}

double paper_hit_density_z(const WeightTable& g, const OrderParams& p, int k, double s) {
  validate_params(p);
  require_level(k);
  if (!(s > 0.0)) throw DomainError("density argument s must be positive");
  const OrderParams at_s{p.order, p.rate, s};
  double total = 0.0;
  for (int gh : g.weights()) {
    if (gh <= k) total += pmf_weighted(at_s, g, k - gh);
  }
  return p.rate * total;
}

std::vector<double> renewal_visit_probs(const JumpLaw& q, int n_max) {
  if (n_max < 0) throw DomainError("n_max must be nonnegative");
  std::vector<double> v(static_cast<std::size_t>(n_max) + 1, 0.0);
  v[0] = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    double acc = 0.0;
    for (std::size_t idx = 0; idx < q.sizes.size() && q.sizes[idx] <= n; ++idx) {
      acc += q.probs[idx] * v[static_cast<std::size_t>(n - q.sizes[idx])];
    }
    v[static_cast<std::size_t>(n)] = acc;
  }
  return v;
}

double oracle_hit_prob(const JumpLaw& q, int k) {
  require_level(k);
  return renewal_visit_probs(q, k).back();
}

double integral_form_hit_prob(const JumpLaw& q, int k) {
  require_level(k);
  // Push the chain's mass forward over states 0..k-1.
  std::vector<double> visit(static_cast<std::size_t>(k), 0.0);
  visit[0] = 1.0;
  for (int n = 0; n < k; ++n) {
    const double here = visit[static_cast<std::size_t>(n)];
    if (here == 0.0) continue;
    for (std::size_t idx = 0; idx < q.sizes.size(); ++idx) {
      const int next = n + q.sizes[idx];
      if (next >= k) break;
      visit[static_cast<std::size_t>(next)] += here * q.probs[idx];
    }
  }
  // Window: the last jump lands exactly on k from k - h.
  double total = 0.0;
  for (std::size_t idx = 0; idx < q.sizes.size() && q.sizes[idx] <= k; ++idx) {
    total += q.probs[idx] * visit[static_cast<std::size_t>(k - q.sizes[idx])];
  }
  return total;
}

double paper_hit_prob_w(const BernsteinFn& f, const OrderParams& p, int k) {
  validate_params(p);
  require_level(k);
  const double x = p.total_rate();
  auto occupation = [&](int m) {
    return lambda_derivative_sum(m, p, [&](int n) { return reciprocal_nth_deriv(f, x, n).value; });
  };
  auto jump_rate = [&](int h) {
    return -lambda_derivative_sum(h, p, [&](int n) { return bernstein_nth_deriv(f, x, n); });
  };
  double total = 0.0;
  for (int h = 1; h <= k; ++h) total += occupation(k - h) * jump_rate(h);
  return total;
}

double paper_hit_prob_u(const OrderParams& p, int k) {
  validate_params(p);
  require_level(k);
  const double i_lambda = p.total_rate();
  const double jump_prob = -std::expm1(-i_lambda);
  const double t1 = p.rate * std::exp(-i_lambda) / jump_prob;
  if (k == 1) return t1;
  if (k == 2) {
    const double two_at_unit_time = pmf_order_i(OrderParams{p.order, p.rate, 1.0}, 2);
    return two_at_unit_time / jump_prob + t1 * t1;
  }
  throw UnsupportedQuery("closed-form U hitting probability is available for k = 1, 2 only");
}

double paper_hit_prob_u2_simplified(const OrderParams& p) {
  const double t1 = paper_hit_prob_u(p, 1);
  return (1.0 + p.rate / 2.0) * t1 + t1 * t1;
}

double iterated_hit_prob_general(double lambda_alpha, int k, double series_eps) {
  if (!(lambda_alpha > 0.0)) throw DomainError("lambda_alpha must be positive");
  require_level(k);
  if (!(series_eps > 0.0)) throw DomainError("series_eps must be positive");
  const double a = lambda_alpha;
  const double log_prefactor = -a + k * std::log(a) - std::lgamma(k + 1.0);
  const double peak = k / a;
  double total = 0.0;
  for (long j = 0; j < 100000000L; ++j) {
    const double jd = static_cast<double>(j);
    const double diff = std::pow(jd + 1.0, k) - std::pow(jd, k);
    const double term = std::exp(log_prefactor - a * jd) * diff;
    total += term;
    if (jd > peak && term < series_eps) break;
  }
  return total;
}

JumpLaw jump_law_for(const HitQuery& query) {
  const HitQuery q = validate_query(query);
  switch (q.process) {
    case ProcessKind::kY:
      return jump_law_y(q.params.order);
    case ProcessKind::kZ:
      return jump_law_z(*q.weights);
    case ProcessKind::kW:
      return jump_law_w(*q.bernstein, q.params, q.level);
    case ProcessKind::kU:
      return jump_law_u(q.params);
  }
  throw DomainError("unknown process");
}

McEstimate mc_hit_prob(const HitQuery& q, const SimConfig& cfg) {
  validate_config(cfg);
  if (cfg.n_paths < 1000) throw DomainError("Monte Carlo hitting estimates need n_paths >= 1000");
  const JumpSampler jumps(jump_law_for(q));
  const std::int64_t k = q.level;
  const auto outcomes = run_streams<char>(
      cfg, [&](Rng& rng) { return static_cast<char>(sample_skeleton(jumps, k, rng).hit); });
  McEstimate out;
  out.n = outcomes.size();
  out.hits = static_cast<std::uint64_t>(std::count(outcomes.begin(), outcomes.end(), 1));
  const auto ci = proportion_ci(out.hits, out.n);
  out.estimate = ci.estimate;
  out.halfwidth_95 = ci.halfwidth;
  return out;
}

HittingReport hit_report(const HitQuery& query, const SimConfig& cfg) {
  const HitQuery q = validate_query(query);
  HittingReport report;
  report.query = q;
  const int i = q.params.order;
  const int k = q.level;
  switch (q.process) {
    case ProcessKind::kY:
      report.paper_value = paper_hit_prob_y(i, k);
      break;
    case ProcessKind::kZ:
      report.paper_value = paper_hit_prob_z(*q.weights, k);
      break;
    case ProcessKind::kW:
      report.paper_value = paper_hit_prob_w(*q.bernstein, q.params, k);
      break;
    case ProcessKind::kU:
      if (k <= 2) {
        report.paper_value = paper_hit_prob_u(q.params, k);
      } else if (i == 1) {
        report.paper_value = iterated_hit_prob_general(q.params.rate, k);
      }
      break;
  }
  const JumpLaw law = jump_law_for(q);
  report.oracle_value = oracle_hit_prob(law, k);
  report.truncated_mass = law.residual_mass;
  report.mc = mc_hit_prob(q, cfg);
  if (report.paper_value) {
    report.paper_oracle_agree =
        std::abs(*report.paper_value - report.oracle_value) <= kPaperOracleTolerance;
  }
  report.oracle_mc_agree = std::abs(report.oracle_value - report.mc.estimate) <=
                           kOracleMcHalfwidths * report.mc.halfwidth_95 + 1e-12;
  return report;
}

}  // namespace orderk
