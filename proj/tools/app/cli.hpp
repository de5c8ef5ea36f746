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

// In-process entry point of the orderk command-line tool.

#ifndef ORDERK_APP_CLI_HPP_
#define ORDERK_APP_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace orderk::app {

// `args` excludes the program name. Returns the process exit code:
// 0 success, 1 verification failure, 2 invalid arguments, 3 unsupported.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orderk::app

#endif  // ORDERK_APP_CLI_HPP_
