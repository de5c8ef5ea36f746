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

// Hitting probabilities P[T_k < inf] for T_k = inf{s : X(s) = k}.
//
// All four processes are nondecreasing pure-jump processes, so X hits k iff
// its embedded jump chain visits k. Three independent routes are provided:
//
//   closed forms        the published expressions (paper_hit_prob_*)
//   renewal recursion   v(0) = 1, v(n) = sum_d q(d) v(n - d)  (oracle)
//   Monte Carlo         skeleton-chain simulation (mc_hit_prob)
//
// hit_report() puts the three side by side. Disagreement between a closed
// form and the oracle is reported, not resolved.

#ifndef ORDERK_HITTING_HPP_
#define ORDERK_HITTING_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orderk/bernstein.hpp"
#include "orderk/exactdist.hpp"
#include "orderk/params.hpp"
#include "orderk/simulate.hpp"

namespace orderk {

enum class ProcessKind { kY, kZ, kW, kU };

const char* to_string(ProcessKind kind);
ProcessKind parse_process_kind(const std::string& text);

struct HitQuery {
  ProcessKind process = ProcessKind::kY;
  OrderParams params;
  std::optional<WeightTable> weights;     // Z
  std::optional<BernsteinFn> bernstein;   // W
  std::optional<double> beta;             // U
  int level = 1;
};

// Throws DomainError unless k >= 1 and the process-specific fields are set.
HitQuery validate_query(const HitQuery& q);

// k / i for 1 <= k <= i - 1, and 1 for k >= i.
double paper_hit_prob_y(int order, int k);

// #{h : g(h) <= k} / i for k < g(i), and 1 for k >= g(i).
double paper_hit_prob_z(const WeightTable& g, int k);

// Density of T_k for Z at s > 0:
//   lambda sum_{h: g(h) <= k} P[Z(s) = k - g(h)].
double paper_hit_density_z(const WeightTable& g, const OrderParams& p, int k, double s);

// Visit probabilities v(0..n_max) of the jump chain by the pull recursion.
std::vector<double> renewal_visit_probs(const JumpLaw& q, int n_max);

// v(k) from the renewal recursion.
double oracle_hit_prob(const JumpLaw& q, int k);

// sum_{h <= k} q(h) v(k - h), with v built by forward propagation of mass.
double integral_form_hit_prob(const JumpLaw& q, int k);

// sum_{h=1}^{k} G(k - h) r(h), where G(m) is the expected occupation time of
// level m (lambda-derivatives of 1 / f(i lambda)) and r(h) the rate of a jump
// of size h (lambda-derivatives of f(i lambda)).
double paper_hit_prob_w(const BernsteinFn& f, const OrderParams& p, int k);

// k = 1: lambda e^{-i lambda} / (1 - e^{-i lambda}).
// k = 2: P[Y(1) = 2] / (1 - e^{-i lambda}) + P[T_1 < inf]^2.
// Other k throw UnsupportedQuery.
double paper_hit_prob_u(const OrderParams& p, int k);

// (1 + lambda / 2) P[T_1 < inf] + P[T_1 < inf]^2, the simplified T_2 form.
// Only valid for i >= 2; kept for comparison.
double paper_hit_prob_u2_simplified(const OrderParams& p);

// Iterated Poisson N^a(N^b(t)) with a = lambda_alpha:
//   e^{-a} a^k / k! sum_{j >= 0} e^{-a j} ((j + 1)^k - j^k),
// summed until the terms (past their peak) fall below series_eps.
double iterated_hit_prob_general(double lambda_alpha, int k, double series_eps = 1e-17);

// Jump-chain law for a query. W laws are built up to size k, since larger
// jumps can only overshoot.
JumpLaw jump_law_for(const HitQuery& q);

struct McEstimate {
  double estimate = 0.0;
  double halfwidth_95 = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t n = 0;
};

// Skeleton-chain Monte Carlo estimate; requires cfg.n_paths >= 1000.
McEstimate mc_hit_prob(const HitQuery& q, const SimConfig& cfg);

inline constexpr double kPaperOracleTolerance = 1e-6;
inline constexpr double kOracleMcHalfwidths = 3.0;

struct HittingReport {
  HitQuery query;
  std::optional<double> paper_value;
  double oracle_value = 0.0;
  McEstimate mc;
  double truncated_mass = 0.0;
  std::optional<bool> paper_oracle_agree;
  bool oracle_mc_agree = false;
};

HittingReport hit_report(const HitQuery& q, const SimConfig& cfg);

}  // namespace orderk

#endif  // ORDERK_HITTING_HPP_
