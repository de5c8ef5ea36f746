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

#ifndef ORDERK_ERRORS_HPP_
#define ORDERK_ERRORS_HPP_

#include <stdexcept>

namespace orderk {

// A parameter lies outside the domain of the operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A Bernstein function cannot supply a derivative of the requested order.
class DerivativeUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The query has no closed form in this library (e.g. U hitting level k > 2).
class UnsupportedQuery : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A statistical test cannot be formed (too few bins after pooling).
class DegenerateTest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace orderk

#endif  // ORDERK_ERRORS_HPP_
