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

// Bernstein functions f and the subordinators H^f they generate, defined by
// E[exp(-mu H^f(t))] = exp(-t f(mu)).
//
// Four families are supported:
//   stable(alpha)   f(x) = x^alpha,              0 < alpha < 1
//   gamma(a, b)     f(x) = a log(1 + x / b),     a, b > 0
//   poisson(beta)   f(x) = beta (1 - exp(-x)),   beta > 0
//   linear(b)       f(x) = b x,                  b > 0

#ifndef ORDERK_BERNSTEIN_HPP_
#define ORDERK_BERNSTEIN_HPP_

#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "orderk/rng.hpp"

namespace orderk {

enum class BernsteinKind { kStable, kGamma, kPoisson, kLinear };

struct StableSpec {
  double alpha;
  friend bool operator==(const StableSpec&, const StableSpec&) = default;
};
struct GammaSpec {
  double shape;
  double rate;
  friend bool operator==(const GammaSpec&, const GammaSpec&) = default;
};
struct PoissonSpec {
  double rate;
  friend bool operator==(const PoissonSpec&, const PoissonSpec&) = default;
};
struct LinearSpec {
  double drift;
  friend bool operator==(const LinearSpec&, const LinearSpec&) = default;
};

class BernsteinFn {
 public:
  using Spec = std::variant<StableSpec, GammaSpec, PoissonSpec, LinearSpec>;

  static BernsteinFn stable(double alpha);
  static BernsteinFn gamma(double shape, double rate);
  static BernsteinFn poisson(double rate);
  static BernsteinFn linear(double drift);

  // Accepts "stable:A", "gamma:A,B", "poisson:B" and "linear:B".
  static BernsteinFn parse(const std::string& text);

  BernsteinKind kind() const;
  const Spec& spec() const { return spec_; }
  // Round-trips through parse().
  std::string to_string() const;

  friend bool operator==(const BernsteinFn&, const BernsteinFn&) = default;

 private:
  explicit BernsteinFn(Spec spec) : spec_(spec) {}
  Spec spec_;
};

// log|v| and sign(v) of a value that may not fit in a double.
struct SignedLog {
  double log_abs = 0.0;
  int sign = 0;  // -1, 0 or +1

  double value() const;
};

// f(x) for x > 0.
double bernstein_value(const BernsteinFn& f, double x);

// d^n f / dx^n at x > 0, in closed form for every family. n = 0 gives f(x).
double bernstein_nth_deriv(const BernsteinFn& f, double x, int n);

// Same derivative in sign/log-magnitude form, for orders where the value
// overflows (the W jump law needs orders up to its truncation level).
SignedLog bernstein_log_abs_deriv(const BernsteinFn& f, double x, int n);

struct DerivativeResult {
  double value = 0.0;
  bool analytic = true;
  // Set when the finite-difference fallback was used above order 6.
  bool precision_degraded = false;
};

// Highest order served by the finite-difference fallback; higher orders
// throw DerivativeUnavailable.
inline constexpr int kMaxFallbackDerivativeOrder = 10;

// d^n (1/f) / dx^n at x > 0. Power rule for stable and linear; Richardson
// extrapolated central differences for gamma and poisson.
DerivativeResult reciprocal_nth_deriv(const BernsteinFn& f, double x, int n);

// n-th derivative of g at x by central differences with base step h and
// `levels` rounds of Richardson extrapolation in h^2.
double richardson_derivative(const std::function<double(double)>& g, double x, int n,
                             double h, int levels = 4);

struct SubordinatorSample {
  double time = 0.0;
  double value = 0.0;
};

// One draw of H^f(t), t >= 0.
//   stable:  t^(1/alpha) times Kanter's one-sided stable variate
//   gamma:   Gamma(shape a t, rate b)
//   poisson: Poisson(beta t) count
//   linear:  b t
SubordinatorSample sample_subordinator(const BernsteinFn& f, double t, Rng& rng);

// H^f at increasing times, built from independent stationary increments so
// the returned values are nondecreasing.
std::vector<double> sample_subordinator_path(const BernsteinFn& f,
                                             std::span<const double> times, Rng& rng);

}  // namespace orderk

#endif  // ORDERK_BERNSTEIN_HPP_
