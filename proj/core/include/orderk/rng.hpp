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

#ifndef ORDERK_RNG_HPP_
#define ORDERK_RNG_HPP_

#include <cstdint>
#include <random>

namespace orderk {

using Rng = std::mt19937_64;

// Independent stream number `stream` of master seed `seed`. The engine is
// seeded through std::seed_seq over the 32-bit words
// (seed_lo, seed_hi, stream_lo, stream_hi), so results are reproducible given
// (seed, stream) on a given standard library.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

// Number of paths assigned to `stream` when `n_paths` are split over
// `n_streams`: the first n_paths % n_streams streams take one extra.
std::uint64_t paths_for_stream(std::uint64_t n_paths, std::uint64_t n_streams,
                               std::uint64_t stream);

}  // namespace orderk

#endif  // ORDERK_RNG_HPP_
