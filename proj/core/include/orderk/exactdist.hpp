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

// Exact laws of the four processes:
//
//   Y(t) = sum_j j N_j(t)                 (Poisson process of order i)
//   Z(t) = sum_j g(j) N_j(t)              (weighted superposition)
//   W(t) = sum_j j N_j(H^f(t))            (subordinated)
//   U(t) = sum_j j N_j(N^beta(t))         (W with a Poisson clock)
//
// Pmfs are sums over weighted compositions of
//   exp(-i lambda t) (lambda t)^(x_1 + ... + x_i) / (x_1! ... x_i!),
// evaluated term by term in log space.

#ifndef ORDERK_EXACTDIST_HPP_
#define ORDERK_EXACTDIST_HPP_

#include <cstdint>
#include <vector>

#include "orderk/bernstein.hpp"
#include "orderk/params.hpp"

namespace orderk {

// Probabilities on [0, n_max] plus a certified bound on the mass above n_max.
struct Pmf {
  std::vector<double> probs;
  double tail_bound = 0.0;

  int n_max() const { return static_cast<int>(probs.size()) - 1; }
  double operator[](int n) const {
    return n >= 0 && n <= n_max() ? probs[static_cast<std::size_t>(n)] : 0.0;
  }
  double mass() const;
  double mean() const;
  double variance() const;
};

// Law of one jump, conditional on a jump occurring. Never renormalized:
// `residual_mass` is the probability of sizes that were truncated away.
struct JumpLaw {
  std::vector<int> sizes;      // strictly increasing, all >= 1
  std::vector<double> probs;   // probs[k] is the mass at sizes[k]
  double residual_mass = 0.0;

  double operator[](int size) const;
  int max_size() const { return sizes.empty() ? 0 : sizes.back(); }
  double total() const;
};

// A truncated series value with a bound on the discarded terms.
struct SeriesValue {
  double value = 0.0;
  double truncation_bound = 0.0;
};

// P[Y(t) = n].
double pmf_order_i(const OrderParams& p, int n);

// P[Z(t) = n] for weights g (g.order() must equal p.order).
double pmf_weighted(const OrderParams& p, const WeightTable& g, int n);

// E[u^Y(t)] = exp(-i lambda t + lambda t sum_{j<=i} u^j), 0 <= u <= 1.
double pgf_y(const OrderParams& p, double u);

// E[u^Z(t)] = exp(-i lambda t + lambda t sum_j u^g(j)), 0 <= u <= 1.
double pgf_weighted(const OrderParams& p, const WeightTable& g, double u);

// P[U(t) = m] = sum_{r >= 0} Poisson(beta t)(r) P[Y(r) = m], summed until the
// Poisson(beta t) tail beyond r drops below series_eps.
SeriesValue pmf_iterated_u(const OrderParams& p, double beta, int m, double series_eps);

// Full tables up to the first n whose Chernoff tail bound is below tail_eps.
Pmf pmf_table_y(const OrderParams& p, double tail_eps = 1e-9);
Pmf pmf_table_z(const OrderParams& p, const WeightTable& g, double tail_eps = 1e-9);
Pmf pmf_table_u(const OrderParams& p, double beta, double tail_eps = 1e-9,
                double series_eps = 1e-14);

// Upper bound on P[X > n] from the cumulant generating function
// log E[e^{sX}] via inf_{s > 0} exp(K(s) - (n + 1) s).
double chernoff_tail_y(const OrderParams& p, int n);
double chernoff_tail_z(const OrderParams& p, const WeightTable& g, int n);
double chernoff_tail_u(const OrderParams& p, double beta, int n);

// Uniform on {1..i}: every size has rate lambda out of i lambda.
JumpLaw jump_law_y(int order);

// Mass 1/i at each g(j), ties aggregated.
JumpLaw jump_law_z(const WeightTable& g);

// Jump law of W on sizes 1..h_max. The rate of a jump of size h is
//   -sum_{x: sum j x_j = h} (-lambda)^|x| / (x! i^|x|) d^|x|/dlambda^|x| f(i lambda)
// out of a total rate f(i lambda).
JumpLaw jump_law_w(const BernsteinFn& f, const OrderParams& p, int h_max);

// Jump law of U: P[Y(1) = h] / (1 - e^{-i lambda}), h >= 1, truncated once
// the certified remaining mass is below tail_eps.
JumpLaw jump_law_u(const OrderParams& p, double tail_eps = 1e-15);

// Poisson(mean) pmf at r, evaluated in log space.
double poisson_pmf(double mean, std::int64_t r);

// Bound on P[Poisson(mean) > r] via the geometric majorant of the terms past r.
// Returns 1 when r + 2 <= mean.
double poisson_tail_bound(double mean, std::int64_t r);

}  // namespace orderk

#endif  // ORDERK_EXACTDIST_HPP_
