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

#ifndef RFT_ERRORS_HPP
#define RFT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rft {

/// Syntax or static-semantics error in an input text, with 1-based location.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column,
             std::vector<std::string> expected = {});

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& bare_message() const { return bare_; }

 private:
  std::string bare_;
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

/// A symbolic transition drives a variable outside its declared range.
class RangeOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A label used by a module is missing from (or inconsistent with) the alphabet.
class UnknownLabel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parallel composition of components that share outputs or clocks, or
/// disagree on urgency.
class IncompatibleComponents : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A gate instance the template library cannot build (e.g. SG with no spares).
class UnsupportedArity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation failure inside the expression engine (bad index, empty random
/// choice, ...).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SimulationError : public std::runtime_error {
 public:
  enum class Kind { kDeadlock, kUrgentLivelock, kModel };
  SimulationError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace rft

#endif  // RFT_ERRORS_HPP
