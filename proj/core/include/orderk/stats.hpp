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

// Goodness-of-fit and interval helpers for the verification suites.

#ifndef ORDERK_STATS_HPP_
#define ORDERK_STATS_HPP_

#include <cstdint>
#include <vector>

#include "orderk/exactdist.hpp"
#include "orderk/simulate.hpp"

namespace orderk {

struct GofResult {
  double statistic = 0.0;
  int degrees_of_freedom = 1;
  double p_value = 1.0;
  int pooled_bins = 0;
};

struct PooledBin {
  std::int64_t first_level = 0;
  std::int64_t last_level = 0;  // inclusive; the one-sample last bin is open-ended
  double observed = 0.0;
  double expected = 0.0;
};

inline constexpr double kDefaultMinExpected = 5.0;
inline constexpr std::uint64_t kMinGofSampleSize = 100;

// Upper tail P[chi2_df > x].
double chi_square_sf(double x, int df);

// Observed counts against a pmf. Bins are pooled left to right until each
// expected count reaches min_expected; the pmf's missing mass and any counts
// above its support land in the last bin. Counts at negative levels are a
// DomainError. Fewer than 2 pooled bins throws DegenerateTest.
std::vector<PooledBin> pool_one_sample(const Histogram& counts, const Pmf& expected,
                                      double min_expected = kDefaultMinExpected);

GofResult chi_square_one_sample(const Histogram& counts, const Pmf& expected,
                                double min_expected = kDefaultMinExpected);

// Contingency chi-square for two samples over the union of their levels,
// pooled until both samples' expected counts reach min_expected.
GofResult chi_square_two_sample(const Histogram& a, const Histogram& b,
                                double min_expected = kDefaultMinExpected);

struct ProportionCi {
  double estimate = 0.0;
  double halfwidth = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

// Normal-approximation interval z * sqrt(p (1 - p) / n), bounds clipped to
// [0, 1].
ProportionCi proportion_ci(std::uint64_t hits, std::uint64_t n, double level = 0.95);

struct SampleMoments {
  std::uint64_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
};

SampleMoments sample_moments(const Histogram& counts);

// (sample mean - pmf mean) / (pmf sd / sqrt(n)).
double mean_z_score(const Histogram& counts, const Pmf& expected);

}  // namespace orderk

#endif  // ORDERK_STATS_HPP_
