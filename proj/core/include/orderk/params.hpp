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

#ifndef ORDERK_PARAMS_HPP_
#define ORDERK_PARAMS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace orderk {

// Parameters shared by every process: order i, per-component rate lambda
// and observation time t.
struct OrderParams {
  int order = 1;
  double rate = 1.0;
  double time = 1.0;

  // Total event rate of the superposition, i * lambda.
  double total_rate() const { return order * rate; }
  // Mean number of component events on [0, t] per component, lambda * t.
  double intensity() const { return rate * time; }

  friend bool operator==(const OrderParams&, const OrderParams&) = default;
};

// Returns `p` unchanged when i >= 1, lambda > 0 and t >= 0; throws
// DomainError otherwise.
OrderParams validate_params(const OrderParams& p);

// The weight function g of the weighted process Z, stored as the table
// g(1), ..., g(i). Entries are positive and nondecreasing; ties are allowed.
class WeightTable {
 public:
  explicit WeightTable(std::vector<int> weights);

  // g(j) = j for j = 1..i.
  static WeightTable identity(int order);
  // Parses a comma separated list such as "2,4".
  static WeightTable parse(const std::string& text);

  int order() const { return static_cast<int>(weights_.size()); }
  int operator()(int j) const { return weights_[static_cast<std::size_t>(j - 1)]; }
  int max_weight() const { return weights_.back(); }
  std::span<const int> weights() const { return weights_; }
  std::string to_string() const;

  friend bool operator==(const WeightTable&, const WeightTable&) = default;

 private:
  std::vector<int> weights_;
};

// A vector of nonnegative counts x_1..x_i together with the weighted sum
// sum_j w_j x_j it realizes.
struct Composition {
  std::vector<int> counts;
  std::int64_t weighted_sum = 0;

  int total_count() const;
  friend bool operator==(const Composition&, const Composition&) = default;
};

}  // namespace orderk

#endif  // ORDERK_PARAMS_HPP_
