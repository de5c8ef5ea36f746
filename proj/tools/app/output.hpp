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

// File, checksum and number-formatting helpers for CLI outputs.

#ifndef ORDERK_APP_OUTPUT_HPP_
#define ORDERK_APP_OUTPUT_HPP_

#include <filesystem>
#include <string>
#include <string_view>

namespace orderk::app {

// 17 significant digits, so every double parses back exactly.
std::string csv_number(double x);

std::string sha256_hex(std::string_view bytes);

// ISO 8601 UTC, seconds resolution.
std::string utc_timestamp();

void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace orderk::app

#endif  // ORDERK_APP_OUTPUT_HPP_
