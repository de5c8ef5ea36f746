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

#include <benchmark/benchmark.h>

#include "orderk/exactdist.hpp"
#include "orderk/hitting.hpp"
#include "orderk/simulate.hpp"

namespace {

using orderk::OrderParams;

void BM_PmfTableY(benchmark::State& state) {
  const OrderParams p{static_cast<int>(state.range(0)), 1.0, 3.0};
  for (auto _ : state) benchmark::DoNotOptimize(orderk::pmf_table_y(p));
}
// composition sums grow exponentially in i; i = 10 at lambda t = 3 does not finish
BENCHMARK(BM_PmfTableY)->Arg(1)->Arg(3)->Arg(5);

void BM_PmfTableU(benchmark::State& state) {
  const OrderParams p{static_cast<int>(state.range(0)), 1.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(orderk::pmf_table_u(p, 1.0));
}
BENCHMARK(BM_PmfTableU)->Arg(1)->Arg(2)->Arg(3);

void BM_TerminalY(benchmark::State& state) {
  const OrderParams p{3, 1.0, 1.0};
  const auto mode = state.range(0) == 0 ? orderk::SamplingMode::kSuperposition
                                        : orderk::SamplingMode::kCompound;
  auto rng = orderk::make_stream(42, 0);
  for (auto _ : state) benchmark::DoNotOptimize(orderk::terminal_y(p, rng, mode));
}
BENCHMARK(BM_TerminalY)->Arg(0)->Arg(1);

void BM_TerminalWStable(benchmark::State& state) {
  const OrderParams p{2, 1.0, 1.0};
  const auto f = orderk::BernsteinFn::parse("stable:0.5");
  auto rng = orderk::make_stream(42, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(orderk::terminal_w(p, f, rng, orderk::SamplingMode::kCompound));
  }
}
BENCHMARK(BM_TerminalWStable);

void BM_SkeletonY(benchmark::State& state) {
  const orderk::JumpSampler jumps(orderk::jump_law_y(3));
  auto rng = orderk::make_stream(42, 0);
  for (auto _ : state) benchmark::DoNotOptimize(orderk::sample_skeleton(jumps, 6, rng));
}
BENCHMARK(BM_SkeletonY);

void BM_RenewalOracle(benchmark::State& state) {
  const auto q = orderk::jump_law_y(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(orderk::renewal_visit_probs(q, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_RenewalOracle)->Arg(200)->Arg(5000);

void BM_JumpLawW(benchmark::State& state) {
  const OrderParams p{2, 1.0, 1.0};
  const auto f = orderk::BernsteinFn::parse("stable:0.5");
  for (auto _ : state) {
    benchmark::DoNotOptimize(orderk::jump_law_w(f, p, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_JumpLawW)->Arg(6)->Arg(200);

void BM_PaperHitW(benchmark::State& state) {
  const OrderParams p{2, 1.0, 1.0};
  const auto f = orderk::BernsteinFn::parse("stable:0.5");
  for (auto _ : state) {
    benchmark::DoNotOptimize(orderk::paper_hit_prob_w(f, p, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_PaperHitW)->Arg(3)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
