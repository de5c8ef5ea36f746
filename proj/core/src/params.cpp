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

#include "orderk/params.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "orderk/errors.hpp"

namespace orderk {

OrderParams validate_params(const OrderParams& p) {
  if (p.order < 1) {
    throw DomainError("order i must be >= 1, got " + std::to_string(p.order));
  }
  if (!(p.rate > 0.0) || !std::isfinite(p.rate)) {
    throw DomainError("rate lambda must be positive and finite");
  }
  if (!(p.time >= 0.0) || !std::isfinite(p.time)) {
    throw DomainError("time t must be nonnegative and finite");
  }
  return p;
}

WeightTable::WeightTable(std::vector<int> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw DomainError("weight table must have at least one entry");
  }
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (weights_[j] < 1) {
      throw DomainError("weights must be positive integers");
    }
    if (j > 0 && weights_[j] < weights_[j - 1]) {
      throw DomainError("weights must be nondecreasing");
    }
  }
}

WeightTable WeightTable::identity(int order) {
  if (order < 1) {
    throw DomainError("order i must be >= 1");
  }
  std::vector<int> w(static_cast<std::size_t>(order));
  std::iota(w.begin(), w.end(), 1);
  return WeightTable(std::move(w));
}

WeightTable WeightTable::parse(const std::string& text) {
  std::vector<int> w;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const char* first = text.data() + pos;
    const char* last = text.data() + comma;
    int value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      throw DomainError("cannot parse weight table '" + text + "'");
    }
    w.push_back(value);
    pos = comma + 1;
  }
  return WeightTable(std::move(w));
}

std::string WeightTable::to_string() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (j) os << ',';
    os << weights_[j];
  }
  return os.str();
}

int Composition::total_count() const {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

}  // namespace orderk
