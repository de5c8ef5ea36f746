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

// Sample paths and terminal values of Y, Z, W and U.
//
// Each process has two independent samplers:
//   kSuperposition  the defining construction, i component Poisson
//                   processes with jumps j (or g(j)) merged in time
//   kCompound       one Poisson(i lambda) event stream with i.i.d. uniform
//                   marks on {1..i}
// Equality in distribution of the two is what the compound-representation
// tests check, so the two code paths share nothing beyond the RNG.

#ifndef ORDERK_SIMULATE_HPP_
#define ORDERK_SIMULATE_HPP_

#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "orderk/bernstein.hpp"
#include "orderk/exactdist.hpp"
#include "orderk/params.hpp"
#include "orderk/rng.hpp"

namespace orderk {

enum class SamplingMode { kSuperposition, kCompound };

const char* to_string(SamplingMode mode);
SamplingMode parse_sampling_mode(const std::string& text);

struct PathSample {
  std::vector<double> event_times;        // strictly increasing, in [0, t]
  std::vector<std::int64_t> increments;   // one positive jump per event
  std::int64_t terminal_value = 0;        // sum of increments
};

struct SimConfig {
  std::uint64_t n_paths = 100000;
  std::uint64_t seed = 42;
  std::uint64_t n_streams = 4;
  double horizon = 1.0;
};

SimConfig validate_config(const SimConfig& cfg);

// Paths with more events than this are recorded in aggregated form: one
// increment per distinct jump size, at evenly spaced times. The terminal
// value is unaffected.
inline constexpr std::int64_t kMaxRecordedEvents = 1 << 20;

// Poisson means above this are clamped before sampling; heavy-tailed clocks
// (stable alpha < 1) occasionally produce such values and the resulting
// terminal values lie far beyond any tested level.
inline constexpr double kMaxPoissonMean = 1e15;

PathSample sample_y_superposition(const OrderParams& p, Rng& rng);
PathSample sample_y_compound(const OrderParams& p, Rng& rng);
PathSample sample_z(const OrderParams& p, const WeightTable& g, Rng& rng, SamplingMode mode);
// Events are placed at uniform order statistics on [0, t]; only the terminal
// value and jump sizes carry meaning for W.
PathSample sample_w(const OrderParams& p, const BernsteinFn& f, Rng& rng,
                    SamplingMode mode = SamplingMode::kCompound);
// Superposition mode runs N^beta(t) rounds, each an order-i displacement over
// unit operational time, with the round's total recorded as one jump at the
// clock's arrival time.
PathSample sample_u(const OrderParams& p, double beta, Rng& rng,
                    SamplingMode mode = SamplingMode::kSuperposition);

// Terminal-value-only samplers, same constructions without the paths.
std::int64_t terminal_y(const OrderParams& p, Rng& rng, SamplingMode mode);
std::int64_t terminal_z(const OrderParams& p, const WeightTable& g, Rng& rng, SamplingMode mode);
std::int64_t terminal_w(const OrderParams& p, const BernsteinFn& f, Rng& rng, SamplingMode mode);
std::int64_t terminal_u(const OrderParams& p, double beta, Rng& rng, SamplingMode mode);

struct SkeletonOutcome {
  bool hit = false;
  std::int64_t final_level = 0;  // first cumulative value >= k, or -1 on escape
  std::int64_t n_jumps = 0;
};

// Inverse-CDF sampler over a JumpLaw; returns 0 for the residual mass.
class JumpSampler {
 public:
  explicit JumpSampler(const JumpLaw& q);
  std::int64_t operator()(Rng& rng) const;

 private:
  std::vector<double> cdf_;
  std::vector<int> sizes_;
};

// Runs the embedded jump chain with i.i.d. jumps from q until it reaches or
// passes k. Residual mass of q counts as a jump past k.
SkeletonOutcome sample_skeleton(const JumpLaw& q, std::int64_t k, Rng& rng);
SkeletonOutcome sample_skeleton(const JumpSampler& jumps, std::int64_t k, Rng& rng);

using Histogram = std::map<std::int64_t, std::uint64_t>;

// Runs `draw` n_paths times split over cfg.n_streams independent streams,
// one worker thread per stream, and returns the per-stream results
// concatenated in stream order.
template <typename T>
std::vector<T> run_streams(const SimConfig& cfg, const std::function<T(Rng&)>& draw) {
  validate_config(cfg);
  std::vector<std::vector<T>> per_stream(cfg.n_streams);
  std::vector<std::exception_ptr> errors(cfg.n_streams);
  std::vector<std::thread> workers;
  workers.reserve(cfg.n_streams);
  for (std::uint64_t s = 0; s < cfg.n_streams; ++s) {
    workers.emplace_back([&, s] {
      try {
        Rng rng = make_stream(cfg.seed, s);
        const auto n = paths_for_stream(cfg.n_paths, cfg.n_streams, s);
        auto& out = per_stream[s];
        out.reserve(n);
        for (std::uint64_t k = 0; k < n; ++k) out.push_back(draw(rng));
      } catch (...) {
        errors[s] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<T> merged;
  merged.reserve(cfg.n_paths);
  for (auto& v : per_stream) merged.insert(merged.end(), v.begin(), v.end());
  return merged;
}

// Histogram of terminal values from run_streams.
Histogram simulate_histogram(const SimConfig& cfg,
                             const std::function<std::int64_t(Rng&)>& draw);

}  // namespace orderk

#endif  // ORDERK_SIMULATE_HPP_
