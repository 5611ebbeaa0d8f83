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

#include "rft/errors.hpp"

#include <utility>

namespace rft {

namespace {

std::string render(const std::string& message, std::size_t line, std::size_t column,
                   const std::vector<std::string>& expected) {
  std::string out = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  // Messages that already say what was expected are not repeated.
  if (!expected.empty() && message.rfind("expected ", 0) != 0) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) out += i + 1 == expected.size() ? " or " : ", ";
      out += expected[i];
    }
    out += ")";
  }
  return out;
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column,
                       std::vector<std::string> expected)
    : std::runtime_error(render(message, line, column, expected)),
      bare_(message),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

}  // namespace rft
