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


#include "orderk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "orderk/errors.hpp"

namespace orderk {

namespace {

// One cell per sample; `expected` and `observed` have the same width.
struct Cell {
  std::int64_t first = 0;
  std::int64_t last = 0;
  std::vector<double> expected;
  std::vector<double> observed;
};

bool cell_ready(const Cell& c, double min_expected) {
  return std::all_of(c.expected.begin(), c.expected.end(),
                     [&](double e) { return e >= min_expected; });
}

void absorb(Cell& into, const Cell& from) {
  into.last = from.last;
  for (std::size_t s = 0; s < into.expected.size(); ++s) {
    into.expected[s] += from.expected[s];
    into.observed[s] += from.observed[s];
  }
}

std::vector<Cell> pool(const std::vector<Cell>& raw, double min_expected) {
  std::vector<Cell> out;
  if (raw.empty()) return out;
  Cell acc{0, 0, std::vector<double>(raw.front().expected.size(), 0.0),
           std::vector<double>(raw.front().observed.size(), 0.0)};
  bool open = false;
  for (const auto& c : raw) {
    if (!open) acc.first = c.first;
    absorb(acc, c);
    open = true;
    if (cell_ready(acc, min_expected)) {
      out.push_back(acc);
      std::fill(acc.expected.begin(), acc.expected.end(), 0.0);
      std::fill(acc.observed.begin(), acc.observed.end(), 0.0);
      open = false;
    }
  }
  if (open) {
    if (out.empty()) {
      out.push_back(acc);
    } else {
      absorb(out.back(), acc);
    }
  }
  return out;
}

double pearson(const std::vector<Cell>& cells) {
  double stat = 0.0;
  for (const auto& c : cells) {
    for (std::size_t s = 0; s < c.expected.size(); ++s) {
      if (c.expected[s] > 0.0) {
        const double d = c.observed[s] - c.expected[s];
        stat += d * d / c.expected[s];
      }
    }
  }
  return stat;
}

std::uint64_t total(const Histogram& h) {
  std::uint64_t n = 0;
  for (const auto& [level, count] : h) {
    if (level < 0) throw DomainError("histogram levels must be nonnegative");
    n += count;
  }
  return n;
}

GofResult finish(const std::vector<Cell>& cells) {
  if (cells.size() < 2) throw DegenerateTest("fewer than 2 bins remain after pooling");
  GofResult r;
  r.statistic = pearson(cells);
  r.pooled_bins = static_cast<int>(cells.size());
  r.degrees_of_freedom = r.pooled_bins - 1;
  r.p_value = chi_square_sf(r.statistic, r.degrees_of_freedom);
  return r;
}

}  // namespace

double chi_square_sf(double x, int df) {
  if (df < 1) throw DomainError("degrees of freedom must be >= 1");
  if (!(x >= 0.0)) throw DomainError("chi-square statistic must be nonnegative");
  if (x == 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * df, 0.5 * x);
}

namespace {

std::vector<Cell> pooled_cells(const Histogram& counts, const Pmf& expected,
                               double min_expected) {
  if (!(min_expected > 0.0)) throw DomainError("min_expected must be positive");
  const std::uint64_t n = total(counts);
  if (n < kMinGofSampleSize) throw DomainError("goodness-of-fit needs at least 100 counts");
  if (expected.probs.empty()) throw DomainError("expected pmf is empty");
  const double nd = static_cast<double>(n);
  const int top = expected.n_max();

  std::vector<Cell> raw(static_cast<std::size_t>(top) + 1, Cell{0, 0, {0.0}, {0.0}});
  for (int level = 0; level <= top; ++level) {
    auto& c = raw[static_cast<std::size_t>(level)];
    c.first = c.last = level;
    c.expected[0] = nd * expected[level];
  }
  raw.back().expected[0] += nd * std::max(0.0, 1.0 - expected.mass());
  for (const auto& [level, count] : counts) {
    const auto slot = static_cast<std::size_t>(std::min<std::int64_t>(level, top));
    raw[slot].observed[0] += static_cast<double>(count);
  }
  return pool(raw, min_expected);
}

}  // namespace

std::vector<PooledBin> pool_one_sample(const Histogram& counts, const Pmf& expected,
                                       double min_expected) {
  std::vector<PooledBin> out;
  for (const auto& c : pooled_cells(counts, expected, min_expected)) {
    out.push_back(PooledBin{c.first, c.last, c.observed[0], c.expected[0]});
  }
  return out;
}

GofResult chi_square_one_sample(const Histogram& counts, const Pmf& expected,
                                double min_expected) {
  return finish(pooled_cells(counts, expected, min_expected));
}

GofResult chi_square_two_sample(const Histogram& a, const Histogram& b, double min_expected) {
  if (!(min_expected > 0.0)) throw DomainError("min_expected must be positive");
  const std::uint64_t na = total(a);
  const std::uint64_t nb = total(b);
  if (na < kMinGofSampleSize || nb < kMinGofSampleSize) {
    throw DomainError("two-sample test needs at least 100 counts per sample");
  }
  const double share_a = static_cast<double>(na) / static_cast<double>(na + nb);

  Histogram combined = a;
  for (const auto& [level, count] : b) combined[level] += count;

  std::vector<Cell> raw;
  raw.reserve(combined.size());
  for (const auto& [level, count] : combined) {
    const auto ia = a.find(level);
    const auto ib = b.find(level);
    const double oa = ia == a.end() ? 0.0 : static_cast<double>(ia->second);
    const double ob = ib == b.end() ? 0.0 : static_cast<double>(ib->second);
    const double c = static_cast<double>(count);
    raw.push_back(Cell{level, level, {c * share_a, c * (1.0 - share_a)}, {oa, ob}});
  }
  return finish(pool(raw, min_expected));
}

ProportionCi proportion_ci(std::uint64_t hits, std::uint64_t n, double level) {
  if (n == 0) throw DomainError("proportion_ci needs n >= 1");
  if (hits > n) throw DomainError("hits cannot exceed n");
  if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence level must lie in (0, 1)");
  const double z = boost::math::quantile(boost::math::normal(), 0.5 + 0.5 * level);
  ProportionCi ci;
  ci.estimate = static_cast<double>(hits) / static_cast<double>(n);
  ci.halfwidth = z * std::sqrt(ci.estimate * (1.0 - ci.estimate) / static_cast<double>(n));
  ci.lower = std::max(0.0, ci.estimate - ci.halfwidth);
  ci.upper = std::min(1.0, ci.estimate + ci.halfwidth);
  return ci;
}

SampleMoments sample_moments(const Histogram& counts) {
  SampleMoments m;
  m.n = total(counts);
  if (m.n == 0) return m;
  const double nd = static_cast<double>(m.n);
  double sum = 0.0;
  for (const auto& [level, count] : counts) sum += static_cast<double>(level) * count;
  m.mean = sum / nd;
  double ss = 0.0;
  for (const auto& [level, count] : counts) {
    const double d = static_cast<double>(level) - m.mean;
    ss += d * d * count;
  }
  m.variance = m.n > 1 ? ss / (nd - 1.0) : 0.0;
  return m;
}

double mean_z_score(const Histogram& counts, const Pmf& expected) {
  const SampleMoments m = sample_moments(counts);
  if (m.n == 0) throw DomainError("mean_z_score needs a nonempty histogram");
  const double sd = std::sqrt(expected.variance());
  if (!(sd > 0.0)) throw DegenerateTest("expected pmf has zero variance");
  return (m.mean - expected.mean()) / (sd / std::sqrt(static_cast<double>(m.n)));
}

}  // namespace orderk
