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

#include "orderk/bernstein.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "orderk/errors.hpp"

namespace orderk {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

void require_positive_argument(double x) {
  if (!(x > 0.0)) {
    throw DomainError("Bernstein function argument must be positive");
  }
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::vector<double> parse_numbers(const std::string& text, const std::string& full) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const char* first = text.data() + pos;
    const char* last = text.data() + comma;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      throw DomainError("cannot parse Bernstein function '" + full + "'");
    }
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

// Rising factorial magnitude: sum_{m=0}^{n-1} log|a + m|.
double log_abs_pochhammer(double a, int n) {
  double s = 0.0;
  for (int m = 0; m < n; ++m) s += std::log(std::abs(a + m));
  return s;
}

}  // namespace

BernsteinFn BernsteinFn::stable(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("stable index alpha must lie in (0, 1)");
  }
  return BernsteinFn(StableSpec{alpha});
}

BernsteinFn BernsteinFn::gamma(double shape, double rate) {
  require_positive(shape, "gamma shape a");
  require_positive(rate, "gamma rate b");
  return BernsteinFn(GammaSpec{shape, rate});
}

BernsteinFn BernsteinFn::poisson(double rate) {
  require_positive(rate, "poisson rate beta");
  return BernsteinFn(PoissonSpec{rate});
}

BernsteinFn BernsteinFn::linear(double drift) {
  require_positive(drift, "linear drift b");
  return BernsteinFn(LinearSpec{drift});
}

BernsteinFn BernsteinFn::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw DomainError("Bernstein function must look like kind:params, got '" + text + "'");
  }
  const std::string kind = text.substr(0, colon);
  const auto args = parse_numbers(text.substr(colon + 1), text);
  auto expect = [&](std::size_t n) {
    if (args.size() != n) {
      throw DomainError("wrong number of parameters in '" + text + "'");
    }
  };
  if (kind == "stable") {
    expect(1);
    return stable(args[0]);
  }
  if (kind == "gamma") {
    expect(2);
    return gamma(args[0], args[1]);
  }
  if (kind == "poisson") {
    expect(1);
    return poisson(args[0]);
  }
  if (kind == "linear") {
    expect(1);
    return linear(args[0]);
  }
  throw DomainError("unknown Bernstein family '" + kind + "'");
}

BernsteinKind BernsteinFn::kind() const {
  return std::visit(Overloaded{
                        [](const StableSpec&) { return BernsteinKind::kStable; },
                        [](const GammaSpec&) { return BernsteinKind::kGamma; },
                        [](const PoissonSpec&) { return BernsteinKind::kPoisson; },
                        [](const LinearSpec&) { return BernsteinKind::kLinear; },
                    },
                    spec_);
}

std::string BernsteinFn::to_string() const {
  return std::visit(
      Overloaded{
          [](const StableSpec& s) { return "stable:" + format_double(s.alpha); },
          [](const GammaSpec& s) {
            return "gamma:" + format_double(s.shape) + "," + format_double(s.rate);
          },
          [](const PoissonSpec& s) { return "poisson:" + format_double(s.rate); },
          [](const LinearSpec& s) { return "linear:" + format_double(s.drift); },
      },
      spec_);
}

double SignedLog::value() const {
  return sign == 0 ? 0.0 : sign * std::exp(log_abs);
}

double bernstein_value(const BernsteinFn& f, double x) {
  require_positive_argument(x);
  return std::visit(Overloaded{
                        [&](const StableSpec& s) { return std::pow(x, s.alpha); },
                        [&](const GammaSpec& s) { return s.shape * std::log1p(x / s.rate); },
                        [&](const PoissonSpec& s) { return -s.rate * std::expm1(-x); },
                        [&](const LinearSpec& s) { return s.drift * x; },
                    },
                    f.spec());
}

SignedLog bernstein_log_abs_deriv(const BernsteinFn& f, double x, int n) {
  require_positive_argument(x);
  if (n < 0) throw DomainError("derivative order must be nonnegative");
  if (n == 0) {
    const double v = bernstein_value(f, x);
    return {std::log(v), v > 0 ? 1 : 0};
  }
  // Every Bernstein function has sign(f^(n)) = (-1)^(n-1) for n >= 1.
  const int sign = (n % 2 == 1) ? 1 : -1;
  return std::visit(
      Overloaded{
          [&](const StableSpec& s) {
            // alpha (alpha - 1) ... (alpha - n + 1) x^(alpha - n)
            double log_ff = 0.0;
            for (int m = 0; m < n; ++m) log_ff += std::log(std::abs(s.alpha - m));
            return SignedLog{log_ff + (s.alpha - n) * std::log(x), sign};
          },
          [&](const GammaSpec& s) {
            // a (-1)^(n-1) (n-1)! / (b + x)^n
            return SignedLog{std::log(s.shape) + std::lgamma(static_cast<double>(n)) -
                                 n * std::log(s.rate + x),
                             sign};
          },
          [&](const PoissonSpec& s) {
            // beta (-1)^(n+1) e^(-x)
            return SignedLog{std::log(s.rate) - x, sign};
          },
          [&](const LinearSpec& s) {
            if (n == 1) return SignedLog{std::log(s.drift), 1};
            return SignedLog{-std::numeric_limits<double>::infinity(), 0};
          },
      },
      f.spec());
}

double bernstein_nth_deriv(const BernsteinFn& f, double x, int n) {
  if (n == 0) return bernstein_value(f, x);
  return bernstein_log_abs_deriv(f, x, n).value();
}

double richardson_derivative(const std::function<double(double)>& g, double x, int n,
                             double h, int levels) {
  if (n < 0 || levels < 1 || !(h > 0.0)) {
    throw DomainError("invalid finite-difference configuration");
  }
  if (n == 0) return g(x);
  std::vector<double> binom(static_cast<std::size_t>(n) + 1, 1.0);
  for (int k = 1; k <= n; ++k) {
    binom[static_cast<std::size_t>(k)] =
        binom[static_cast<std::size_t>(k - 1)] * (n - k + 1) / k;
  }
  auto central = [&](double step) {
    double s = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
      s += sgn * binom[static_cast<std::size_t>(k)] * g(x + (0.5 * n - k) * step);
    }
    return s / std::pow(step, n);
  };
  // table[j] holds the row for step h / 2^j; columns cancel h^2, h^4, ...
  std::vector<std::vector<double>> table(static_cast<std::size_t>(levels));
  for (int j = 0; j < levels; ++j) {
    auto& row = table[static_cast<std::size_t>(j)];
    row.push_back(central(h / std::ldexp(1.0, j)));
    for (int m = 1; m <= j; ++m) {
      const double prev_same = row[static_cast<std::size_t>(m - 1)];
      const double prev_coarse = table[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(m - 1)];
      const double factor = std::ldexp(1.0, 2 * m) - 1.0;
      row.push_back(prev_same + (prev_same - prev_coarse) / factor);
    }
  }
  return table.back().back();
}

DerivativeResult reciprocal_nth_deriv(const BernsteinFn& f, double x, int n) {
  require_positive_argument(x);
  if (n < 0) throw DomainError("derivative order must be nonnegative");
  if (n == 0) return {1.0 / bernstein_value(f, x), true, false};

  // 1/f is completely monotone, so sign((1/f)^(n)) = (-1)^n.
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  switch (f.kind()) {
    case BernsteinKind::kStable: {
      const double alpha = std::get<StableSpec>(f.spec()).alpha;
      // (-alpha)(-alpha - 1)...(-alpha - n + 1) x^(-alpha - n)
      const double log_mag = log_abs_pochhammer(alpha, n) - (alpha + n) * std::log(x);
      return {sign * std::exp(log_mag), true, false};
    }
    case BernsteinKind::kLinear: {
      const double b = std::get<LinearSpec>(f.spec()).drift;
      // (-1)^n n! / (b x^(n+1))
      const double log_mag = std::lgamma(n + 1.0) - std::log(b) - (n + 1) * std::log(x);
      return {sign * std::exp(log_mag), true, false};
    }
    case BernsteinKind::kGamma:
    case BernsteinKind::kPoisson:
      break;
  }
  if (n > kMaxFallbackDerivativeOrder) {
    throw DerivativeUnavailable("reciprocal derivative of order " + std::to_string(n) +
                                " for " + f.to_string() +
                                " exceeds the finite-difference limit of " +
                                std::to_string(kMaxFallbackDerivativeOrder));
  }
  // Base step 0.1 x keeps every stencil point above x / 2 for n <= 10.
  auto reciprocal = [&f](double y) { return 1.0 / bernstein_value(f, y); };
  const double value = richardson_derivative(reciprocal, x, n, 0.1 * x, 4);
  return {value, false, n > 6};
}

SubordinatorSample sample_subordinator(const BernsteinFn& f, double t, Rng& rng) {
  if (!(t >= 0.0)) throw DomainError("subordinator time must be nonnegative");
  if (t == 0.0) return {t, 0.0};
  const double value = std::visit(
      Overloaded{
          [&](const StableSpec& s) {
            // Kanter's representation of the one-sided stable law with
            // E[exp(-mu S)] = exp(-mu^alpha).
            const double a = s.alpha;
            std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
            std::exponential_distribution<double> expo(1.0);
            double u = angle(rng);
            while (u == 0.0) u = angle(rng);
            const double e = expo(rng);
            const double num = std::sin(a * u) / std::pow(std::sin(u), 1.0 / a);
            const double tail = std::pow(std::sin((1.0 - a) * u) / e, (1.0 - a) / a);
            return std::pow(t, 1.0 / a) * num * tail;
          },
          [&](const GammaSpec& s) {
            std::gamma_distribution<double> g(s.shape * t, 1.0 / s.rate);
            return g(rng);
          },
          [&](const PoissonSpec& s) {
            std::poisson_distribution<long long> p(s.rate * t);
            return static_cast<double>(p(rng));
          },
          [&](const LinearSpec& s) { return s.drift * t; },
      },
      f.spec());
  return {t, value};
}

std::vector<double> sample_subordinator_path(const BernsteinFn& f,
                                             std::span<const double> times, Rng& rng) {
  std::vector<double> out;
  out.reserve(times.size());
  double prev_t = 0.0;
  double level = 0.0;
  for (double t : times) {
    if (t < prev_t) throw DomainError("subordinator path times must be nondecreasing");
    level += sample_subordinator(f, t - prev_t, rng).value;
    out.push_back(level);
    prev_t = t;
  }
  return out;
}

}  // namespace orderk
