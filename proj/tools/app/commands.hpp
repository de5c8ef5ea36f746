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

// Execution of resolved RunSpecs and the files each run leaves behind.

#ifndef ORDERK_APP_COMMANDS_HPP_
#define ORDERK_APP_COMMANDS_HPP_

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "run_spec.hpp"

namespace orderk::app {

inline constexpr int kSchemaVersion = 1;

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInvalidArguments = 2;
inline constexpr int kExitUnsupported = 3;

struct CommandResult {
  nlohmann::ordered_json report;
  // Extra data files written next to report.json, e.g. histogram.csv.
  std::vector<std::pair<std::string, std::string>> data_files;
  std::string table;
  std::string csv;
  int exit_code = kExitOk;
};

const char* tool_version();

CommandResult execute(const RunSpec& resolved);

// Writes report.json, the data files and manifest.json into spec.out and
// returns the manifest.
nlohmann::ordered_json write_outputs(const RunSpec& spec, const CommandResult& result,
                                     const std::vector<std::string>& args);

// The text printed on stdout for spec.format.
std::string stdout_text(const RunSpec& spec, const CommandResult& result);

}  // namespace orderk::app

#endif  // ORDERK_APP_COMMANDS_HPP_
