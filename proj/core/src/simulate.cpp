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

#include "orderk/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>

#include "orderk/errors.hpp"

namespace orderk {

namespace {

// Marks are summed one by one below this count, and split multinomially
// above it.
constexpr std::int64_t kLoopMarkLimit = 1 << 16;

std::int64_t poisson_draw(double mean, Rng& rng) {
  if (!(mean > 0.0)) return 0;
  std::poisson_distribution<long long> dist(std::min(mean, kMaxPoissonMean));
  return dist(rng);
}

// Multinomial(n; 1/i, ..., 1/i) counts via sequential binomial splits.
std::vector<std::int64_t> uniform_multinomial(std::int64_t n, int cells, Rng& rng) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(cells), 0);
  std::int64_t remaining = n;
  for (int j = 0; j + 1 < cells && remaining > 0; ++j) {
    std::binomial_distribution<long long> split(remaining, 1.0 / (cells - j));
    const std::int64_t c = split(rng);
    counts[static_cast<std::size_t>(j)] = c;
    remaining -= c;
  }
  counts.back() += remaining;
  return counts;
}

// Sum of n i.i.d. marks g(X), X uniform on {1..i}.
std::int64_t sum_uniform_marks(std::int64_t n, std::span<const int> weights, Rng& rng) {
  const int i = static_cast<int>(weights.size());
  std::int64_t total = 0;
  if (n <= kLoopMarkLimit) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    for (std::int64_t e = 0; e < n; ++e) total += weights[static_cast<std::size_t>(pick(rng))];
    return total;
  }
  const auto counts = uniform_multinomial(n, i, rng);
  for (int j = 0; j < i; ++j) {
    total += weights[static_cast<std::size_t>(j)] * counts[static_cast<std::size_t>(j)];
  }
  return total;
}

// Sum over components of g(j) * Poisson(lambda * clock).
std::int64_t sum_component_counts(double component_mean, std::span<const int> weights, Rng& rng) {
  std::int64_t total = 0;
  for (int w : weights) total += w * poisson_draw(component_mean, rng);
  return total;
}

std::vector<double> sorted_uniform_times(std::int64_t n, double horizon, Rng& rng) {
  std::uniform_real_distribution<double> when(0.0, horizon);
  std::vector<double> times(static_cast<std::size_t>(n));
  for (auto& t : times) t = when(rng);
  std::sort(times.begin(), times.end());
  return times;
}

void finish(PathSample& path) {
  path.terminal_value = std::accumulate(path.increments.begin(), path.increments.end(),
                                        std::int64_t{0});
}

// Each component j is an independent rate-lambda stream with jump w_j,
// generated by exponential gaps and merged by time.
PathSample superposition_path(const OrderParams& p, std::span<const int> weights, Rng& rng) {
  std::vector<std::pair<double, std::int64_t>> events;
  std::exponential_distribution<double> gap(p.rate);
  for (int w : weights) {
    double clock = gap(rng);
    while (clock <= p.time) {
      events.emplace_back(clock, w);
      clock += gap(rng);
    }
  }
  std::sort(events.begin(), events.end());
  PathSample path;
  path.event_times.reserve(events.size());
  path.increments.reserve(events.size());
  for (const auto& [t, w] : events) {
    path.event_times.push_back(t);
    path.increments.push_back(w);
  }
  finish(path);
  return path;
}

// N ~ Poisson(i lambda t) events at uniform order statistics, uniform marks.
PathSample compound_path(const OrderParams& p, std::span<const int> weights, Rng& rng) {
  const std::int64_t n = poisson_draw(p.total_rate() * p.time, rng);
  PathSample path;
  path.event_times = sorted_uniform_times(n, p.time, rng);
  path.increments.reserve(static_cast<std::size_t>(n));
  std::uniform_int_distribution<int> pick(0, static_cast<int>(weights.size()) - 1);
  for (std::int64_t e = 0; e < n; ++e) {
    path.increments.push_back(weights[static_cast<std::size_t>(pick(rng))]);
  }
  finish(path);
  return path;
}

// Path from per-size jump counts, with events in random order at uniform
// times, or aggregated per size when there are too many to record.
PathSample path_from_counts(const std::vector<std::int64_t>& counts, std::span<const int> weights,
                            double horizon, Rng& rng) {
  const std::int64_t n = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  PathSample path;
  if (n <= kMaxRecordedEvents) {
    for (std::size_t j = 0; j < counts.size(); ++j) {
      path.increments.insert(path.increments.end(), static_cast<std::size_t>(counts[j]),
                             weights[j]);
    }
    std::shuffle(path.increments.begin(), path.increments.end(), rng);
    path.event_times = sorted_uniform_times(n, horizon, rng);
  } else {
    std::vector<std::int64_t> batches;
    for (std::size_t j = 0; j < counts.size(); ++j) {
      if (counts[j] > 0) batches.push_back(weights[j] * counts[j]);
    }
    for (std::size_t b = 0; b < batches.size(); ++b) {
      path.event_times.push_back(horizon * static_cast<double>(b + 1) /
                                 static_cast<double>(batches.size() + 1));
      path.increments.push_back(batches[b]);
    }
  }
  finish(path);
  return path;
}

}  // namespace

const char* to_string(SamplingMode mode) {
  return mode == SamplingMode::kSuperposition ? "superposition" : "compound";
}

SamplingMode parse_sampling_mode(const std::string& text) {
  if (text == "superposition") return SamplingMode::kSuperposition;
  if (text == "compound") return SamplingMode::kCompound;
  throw DomainError("sampling mode must be superposition or compound, got '" + text + "'");
}

SimConfig validate_config(const SimConfig& cfg) {
  if (cfg.n_paths < 1) throw DomainError("n_paths must be >= 1");
  if (cfg.n_streams < 1) throw DomainError("n_streams must be >= 1");
  if (!(cfg.horizon >= 0.0)) throw DomainError("horizon must be nonnegative");
  return cfg;
}

PathSample sample_y_superposition(const OrderParams& p, Rng& rng) {
  validate_params(p);
  return superposition_path(p, WeightTable::identity(p.order).weights(), rng);
}

PathSample sample_y_compound(const OrderParams& p, Rng& rng) {
  validate_params(p);
  return compound_path(p, WeightTable::identity(p.order).weights(), rng);
}

PathSample sample_z(const OrderParams& p, const WeightTable& g, Rng& rng, SamplingMode mode) {
  validate_params(p);
  if (g.order() != p.order) throw DomainError("weight table length must equal the order i");
  return mode == SamplingMode::kSuperposition ? superposition_path(p, g.weights(), rng)
                                              : compound_path(p, g.weights(), rng);
}

PathSample sample_w(const OrderParams& p, const BernsteinFn& f, Rng& rng, SamplingMode mode) {
  validate_params(p);
  const auto identity = WeightTable::identity(p.order);
  const double clock = sample_subordinator(f, p.time, rng).value;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(p.order), 0);
  if (mode == SamplingMode::kSuperposition) {
    for (auto& c : counts) c = poisson_draw(p.rate * clock, rng);
  } else {
    const std::int64_t n = poisson_draw(p.total_rate() * clock, rng);
    if (n <= kLoopMarkLimit) {
      std::uniform_int_distribution<int> pick(0, p.order - 1);
      for (std::int64_t e = 0; e < n; ++e) ++counts[static_cast<std::size_t>(pick(rng))];
    } else {
      counts = uniform_multinomial(n, p.order, rng);
    }
  }
  return path_from_counts(counts, identity.weights(), p.time, rng);
}

PathSample sample_u(const OrderParams& p, double beta, Rng& rng, SamplingMode mode) {
  validate_params(p);
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  const auto identity = WeightTable::identity(p.order);
  if (mode == SamplingMode::kCompound) {
    const std::int64_t rounds = poisson_draw(beta * p.time, rng);
    const std::int64_t n = poisson_draw(p.total_rate() * static_cast<double>(rounds), rng);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(p.order), 0);
    std::uniform_int_distribution<int> pick(0, p.order - 1);
    if (n <= kLoopMarkLimit) {
      for (std::int64_t e = 0; e < n; ++e) ++counts[static_cast<std::size_t>(pick(rng))];
    } else {
      counts = uniform_multinomial(n, p.order, rng);
    }
    return path_from_counts(counts, identity.weights(), p.time, rng);
  }
  PathSample path;
  std::exponential_distribution<double> gap(beta);
  for (double clock = gap(rng); clock <= p.time; clock += gap(rng)) {
    const std::int64_t displacement = sum_component_counts(p.rate, identity.weights(), rng);
    if (displacement > 0) {
      path.event_times.push_back(clock);
      path.increments.push_back(displacement);
    }
  }
  finish(path);
  return path;
}

std::int64_t terminal_y(const OrderParams& p, Rng& rng, SamplingMode mode) {
  validate_params(p);
  return terminal_z(p, WeightTable::identity(p.order), rng, mode);
}

std::int64_t terminal_z(const OrderParams& p, const WeightTable& g, Rng& rng, SamplingMode mode) {
  validate_params(p);
  if (g.order() != p.order) throw DomainError("weight table length must equal the order i");
  if (mode == SamplingMode::kSuperposition) {
    return sum_component_counts(p.intensity(), g.weights(), rng);
  }
  return sum_uniform_marks(poisson_draw(p.total_rate() * p.time, rng), g.weights(), rng);
}

std::int64_t terminal_w(const OrderParams& p, const BernsteinFn& f, Rng& rng, SamplingMode mode) {
  validate_params(p);
  const auto identity = WeightTable::identity(p.order);
  const double clock = sample_subordinator(f, p.time, rng).value;
  if (mode == SamplingMode::kSuperposition) {
    return sum_component_counts(p.rate * clock, identity.weights(), rng);
  }
  return sum_uniform_marks(poisson_draw(p.total_rate() * clock, rng), identity.weights(), rng);
}

std::int64_t terminal_u(const OrderParams& p, double beta, Rng& rng, SamplingMode mode) {
  validate_params(p);
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  const auto identity = WeightTable::identity(p.order);
  const std::int64_t rounds = poisson_draw(beta * p.time, rng);
  if (mode == SamplingMode::kSuperposition) {
    std::int64_t total = 0;
    for (std::int64_t r = 0; r < rounds; ++r) {
      total += sum_component_counts(p.rate, identity.weights(), rng);
    }
    return total;
  }
  const std::int64_t n = poisson_draw(p.total_rate() * static_cast<double>(rounds), rng);
  return sum_uniform_marks(n, identity.weights(), rng);
}

JumpSampler::JumpSampler(const JumpLaw& q) : sizes_(q.sizes.begin(), q.sizes.end()) {
  if (q.sizes.size() != q.probs.size()) {
    throw DomainError("jump law sizes and probabilities differ in length");
  }
  cdf_.reserve(q.probs.size());
  double acc = 0.0;
  for (double w : q.probs) {
    if (w < 0.0) throw DomainError("jump law probabilities must be nonnegative");
    acc += w;
    cdf_.push_back(acc);
  }
  if (acc > 1.0 + 1e-9) throw DomainError("jump law mass exceeds one");
}

std::int64_t JumpSampler::operator()(Rng& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) return 0;
  return sizes_[static_cast<std::size_t>(it - cdf_.begin())];
}

SkeletonOutcome sample_skeleton(const JumpSampler& jumps, std::int64_t k, Rng& rng) {
  if (k < 1) throw DomainError("target level k must be >= 1");
  SkeletonOutcome out;
  std::int64_t level = 0;
  while (level < k) {
    const std::int64_t jump = jumps(rng);
    ++out.n_jumps;
    if (jump == 0) {
      out.final_level = -1;
      return out;
    }
    level += jump;
  }
  out.hit = level == k;
  out.final_level = level;
  return out;
}

SkeletonOutcome sample_skeleton(const JumpLaw& q, std::int64_t k, Rng& rng) {
  return sample_skeleton(JumpSampler(q), k, rng);
}

Histogram simulate_histogram(const SimConfig& cfg,
                             const std::function<std::int64_t(Rng&)>& draw) {
  Histogram h;
  for (std::int64_t v : run_streams<std::int64_t>(cfg, draw)) ++h[v];
  return h;
}

}  // namespace orderk
