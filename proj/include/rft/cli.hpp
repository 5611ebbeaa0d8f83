/*
 * Copyright 2026 The rftiosa Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef RFT_CLI_HPP
#define RFT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace rft {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;  // invalid tree, failed check, failed run
inline constexpr int kExitIo = 2;
inline constexpr int kExitUsage = 64;

/// Runs `rftiosa <args...>` (args excludes the program name).  Human-readable
/// lines come first, then a `---` delimited block of key=value lines.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rft

#endif  // RFT_CLI_HPP
