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

#include "orderk/exactdist.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "orderk/compositions.hpp"
#include "orderk/errors.hpp"

namespace orderk {

namespace {

constexpr int kMaxTableLevel = 1 << 20;

// log(x_1! ... x_i!)
double log_factorial_product(std::span<const int> counts) {
  double s = 0.0;
  for (int x : counts) {
    if (x > 1) s += std::lgamma(x + 1.0);
  }
  return s;
}

double weighted_pmf(const OrderParams& p, std::span<const int> weights, int n) {
  validate_params(p);
  if (n < 0) return 0.0;
  const double intensity = p.intensity();
  if (intensity == 0.0) return n == 0 ? 1.0 : 0.0;
  const double log_intensity = std::log(intensity);
  const double log_base = -p.order * intensity;
  double total = 0.0;
  for_each_composition(n, weights, [&](std::span<const int> counts) {
    const int events = std::accumulate(counts.begin(), counts.end(), 0);
    total += std::exp(log_base + events * log_intensity - log_factorial_product(counts));
  });
  return total;
}

// inf_{s>0} exp(K(s) - (n+1) s) for a convex cumulant generating function K
// with derivative dK, found by bisection on dK(s) = n + 1.
double chernoff_bound(const std::function<double(double)>& cgf,
                      const std::function<double(double)>& cgf_slope, int n, double s_cap) {
  const double target = n + 1.0;
  if (cgf_slope(0.0) >= target) return 1.0;
  double lo = 0.0;
  double hi = std::min(1.0, s_cap);
  while (cgf_slope(hi) < target && hi < s_cap) hi = std::min(2.0 * hi, s_cap);
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (cgf_slope(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double s = 0.5 * (lo + hi);
  return std::min(1.0, std::exp(cgf(s) - target * s));
}

double weighted_chernoff(const OrderParams& p, std::span<const int> weights, int n) {
  validate_params(p);
  if (n < 0) return 1.0;
  const double intensity = p.intensity();
  if (intensity == 0.0) return 0.0;
  const int g_max = *std::max_element(weights.begin(), weights.end());
  auto cgf = [&](double s) {
    double sum = 0.0;
    for (int g : weights) sum += std::expm1(s * g);
    return intensity * sum;
  };
  auto slope = [&](double s) {
    double sum = 0.0;
    for (int g : weights) sum += g * std::exp(s * g);
    return intensity * sum;
  };
  return chernoff_bound(cgf, slope, n, 500.0 / g_max);
}

template <typename PmfAt, typename TailAt>
Pmf build_table(PmfAt pmf_at, TailAt tail_at, double tail_eps) {
  if (!(tail_eps > 0.0)) throw DomainError("tail_eps must be positive");
  int n_max = 0;
  while (tail_at(n_max) >= tail_eps) {
    if (++n_max > kMaxTableLevel) {
      throw DomainError("pmf support exceeds the table limit; parameters too large");
    }
  }
  Pmf out;
  out.probs.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) out.probs.push_back(pmf_at(n));
  out.tail_bound = tail_at(n_max);
  return out;
}

}  // namespace

double Pmf::mass() const {
  return std::accumulate(probs.begin(), probs.end(), 0.0);
}

double Pmf::mean() const {
  double m = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) m += static_cast<double>(n) * probs[n];
  return m;
}

double Pmf::variance() const {
  const double m = mean();
  double v = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) {
    const double d = static_cast<double>(n) - m;
    v += d * d * probs[n];
  }
  return v;
}

double JumpLaw::operator[](int size) const {
  auto it = std::lower_bound(sizes.begin(), sizes.end(), size);
  if (it == sizes.end() || *it != size) return 0.0;
  return probs[static_cast<std::size_t>(it - sizes.begin())];
}

double JumpLaw::total() const {
  return std::accumulate(probs.begin(), probs.end(), 0.0);
}

double pmf_order_i(const OrderParams& p, int n) {
  validate_params(p);
  const auto identity = WeightTable::identity(p.order);
  return weighted_pmf(p, identity.weights(), n);
}

double pmf_weighted(const OrderParams& p, const WeightTable& g, int n) {
  if (g.order() != p.order) {
    throw DomainError("weight table length must equal the order i");
  }
  return weighted_pmf(p, g.weights(), n);
}

double pgf_y(const OrderParams& p, double u) {
  return pgf_weighted(p, WeightTable::identity(validate_params(p).order), u);
}

double pgf_weighted(const OrderParams& p, const WeightTable& g, double u) {
  validate_params(p);
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("pgf argument must lie in [0, 1]");
  if (g.order() != p.order) throw DomainError("weight table length must equal the order i");
  double s = 0.0;
  for (int w : g.weights()) s += std::pow(u, w);
  return std::exp(-p.order * p.intensity() + p.intensity() * s);
}

double poisson_pmf(double mean, std::int64_t r) {
  if (r < 0) return 0.0;
  if (mean == 0.0) return r == 0 ? 1.0 : 0.0;
  const double rd = static_cast<double>(r);
  return std::exp(-mean + rd * std::log(mean) - std::lgamma(rd + 1.0));
}

double poisson_tail_bound(double mean, std::int64_t r) {
  if (mean == 0.0) return 0.0;
  const double denom = static_cast<double>(r) + 2.0;
  if (denom <= mean) return 1.0;
  // Terms past r+1 shrink by at least mean / (r + 2) each step.
  return std::min(1.0, poisson_pmf(mean, r + 1) / (1.0 - mean / denom));
}

SeriesValue pmf_iterated_u(const OrderParams& p, double beta, int m, double series_eps) {
  validate_params(p);
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  if (!(series_eps > 0.0)) throw DomainError("series_eps must be positive");
  if (m < 0) return {0.0, 0.0};
  const double mean = beta * p.time;
  SeriesValue out;
  for (std::int64_t r = 0;; ++r) {
    const double weight = poisson_pmf(mean, r);
    // Y at integer operational time r.
    const double inner =
        r == 0 ? (m == 0 ? 1.0 : 0.0)
               : pmf_order_i(OrderParams{p.order, p.rate, static_cast<double>(r)}, m);
    out.value += weight * inner;
    const double tail = poisson_tail_bound(mean, r);
    if (static_cast<double>(r) >= mean && tail < series_eps) {
      out.truncation_bound = tail;
      break;
    }
  }
  return out;
}

double chernoff_tail_y(const OrderParams& p, int n) {
  return weighted_chernoff(p, WeightTable::identity(validate_params(p).order).weights(), n);
}

double chernoff_tail_z(const OrderParams& p, const WeightTable& g, int n) {
  if (g.order() != p.order) throw DomainError("weight table length must equal the order i");
  return weighted_chernoff(p, g.weights(), n);
}

double chernoff_tail_u(const OrderParams& p, double beta, int n) {
  validate_params(p);
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  if (n < 0) return 1.0;
  const double clock = beta * p.time;
  if (clock == 0.0) return 0.0;
  const int i = p.order;
  const double lambda = p.rate;
  // K(s) = beta t (exp(lambda (sum_j e^{js} - i)) - 1)
  auto inner = [&](double s) {
    double sum = 0.0;
    for (int j = 1; j <= i; ++j) sum += std::expm1(j * s);
    return lambda * sum;
  };
  auto cgf = [&](double s) { return clock * std::expm1(inner(s)); };
  auto slope = [&](double s) {
    double d = 0.0;
    for (int j = 1; j <= i; ++j) d += j * std::exp(j * s);
    return clock * std::exp(inner(s)) * lambda * d;
  };
  // Keep exp(inner(s)) finite.
  const double s_cap = std::max(1e-6, std::log1p(500.0 / (lambda * i)) / i);
  return chernoff_bound(cgf, slope, n, s_cap);
}

Pmf pmf_table_y(const OrderParams& p, double tail_eps) {
  validate_params(p);
  return build_table([&](int n) { return pmf_order_i(p, n); },
                     [&](int n) { return chernoff_tail_y(p, n); }, tail_eps);
}

Pmf pmf_table_z(const OrderParams& p, const WeightTable& g, double tail_eps) {
  validate_params(p);
  return build_table([&](int n) { return pmf_weighted(p, g, n); },
                     [&](int n) { return chernoff_tail_z(p, g, n); }, tail_eps);
}

Pmf pmf_table_u(const OrderParams& p, double beta, double tail_eps, double series_eps) {
  validate_params(p);
  double truncated = 0.0;
  Pmf out = build_table(
      [&](int m) {
        const auto v = pmf_iterated_u(p, beta, m, series_eps);
        truncated += v.truncation_bound;
        return v.value;
      },
      [&](int n) { return chernoff_tail_u(p, beta, n); }, tail_eps);
  out.tail_bound += truncated;
  return out;
}

JumpLaw jump_law_y(int order) {
  if (order < 1) throw DomainError("order i must be >= 1");
  JumpLaw q;
  for (int j = 1; j <= order; ++j) {
    q.sizes.push_back(j);
    q.probs.push_back(1.0 / order);
  }
  return q;
}

JumpLaw jump_law_z(const WeightTable& g) {
  std::map<int, int> ties;
  for (int w : g.weights()) ++ties[w];
  JumpLaw q;
  for (const auto& [size, count] : ties) {
    q.sizes.push_back(size);
    q.probs.push_back(static_cast<double>(count) / g.order());
  }
  return q;
}

JumpLaw jump_law_w(const BernsteinFn& f, const OrderParams& p, int h_max) {
  validate_params(p);
  if (h_max < 1) throw DomainError("h_max must be >= 1");
  const int i = p.order;
  const double lambda = p.rate;
  const double x = i * lambda;
  const double log_total_rate = std::log(bernstein_value(f, x));
  const double log_lambda = std::log(lambda);
  const auto identity = WeightTable::identity(i);

  JumpLaw q;
  double sum = 0.0;
  for (int h = 1; h <= h_max; ++h) {
    double rate = 0.0;
    for_each_composition(h, identity, [&](std::span<const int> counts) {
      const int n = std::accumulate(counts.begin(), counts.end(), 0);
      // d^n/dlambda^n f(i lambda) = i^n f^(n)(i lambda); the i^n cancels
      // against the 1/i^n of the increment law.
      const SignedLog d = bernstein_log_abs_deriv(f, x, n);
      if (d.sign == 0) return;
      const int sign = -((n % 2 == 0) ? 1 : -1) * d.sign;
      rate += sign * std::exp(n * log_lambda - log_factorial_product(counts) + d.log_abs -
                              log_total_rate);
    });
    if (rate > 0.0) {
      q.sizes.push_back(h);
      q.probs.push_back(rate);
      sum += rate;
    }
  }
  q.residual_mass = std::max(0.0, 1.0 - sum);
  return q;
}

JumpLaw jump_law_u(const OrderParams& p, double tail_eps) {
  validate_params(p);
  if (!(tail_eps > 0.0)) throw DomainError("tail_eps must be positive");
  const OrderParams unit{p.order, p.rate, 1.0};
  const double jump_prob = -std::expm1(-p.total_rate());
  JumpLaw q;
  double sum = 0.0;
  for (int h = 1;; ++h) {
    const double mass = pmf_order_i(unit, h) / jump_prob;
    if (mass > 0.0) {
      q.sizes.push_back(h);
      q.probs.push_back(mass);
      sum += mass;
    }
    if (chernoff_tail_y(unit, h) / jump_prob < tail_eps) break;
    if (h > kMaxTableLevel) throw DomainError("U jump law support exceeds the table limit");
  }
  q.residual_mass = std::max(0.0, 1.0 - sum);
  return q;
}

}  // namespace orderk
