// SPDX-License-Identifier: Apache-2.0
//
// loraplan - LoRaWAN site planning toolkit
// Copyright (C) 2026 The loraplan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef LORAPLAN_CLI_HPP
#define LORAPLAN_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace loraplan {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int domain_failure = 1; // validation violations, unknown gateway, ...
inline constexpr int io_failure = 2;     // unreadable or malformed input, usage errors
} // namespace exit_code

/// Runs the command line `loraplan <args...>`; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace loraplan

#endif
