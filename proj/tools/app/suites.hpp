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

// Verification suites behind `orderk verify`. Each suite is a list of
// checks with the measured value, its reference and the tolerance used.

#ifndef ORDERK_APP_SUITES_HPP_
#define ORDERK_APP_SUITES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace orderk::app {

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct SuiteReport {
  std::string name;
  std::vector<Check> checks;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
  bool passed() const;
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  std::uint64_t streams = 4;
};

// "all" expands to every suite in a fixed order.
std::vector<std::string> expand_suite(const std::string& name);

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts);

SuiteReport run_exact_suite(const SuiteOptions& opts);
SuiteReport run_compound_suite(const SuiteOptions& opts);
SuiteReport run_hitting_suite(const SuiteOptions& opts);
SuiteReport run_paper_compare_suite(const SuiteOptions& opts);
SuiteReport run_laplace_suite(const SuiteOptions& opts);
SuiteReport run_repro_suite(const SuiteOptions& opts);

nlohmann::ordered_json to_json(const Check& c);
nlohmann::ordered_json to_json(const SuiteReport& r);

}  // namespace orderk::app

#endif  // ORDERK_APP_SUITES_HPP_
