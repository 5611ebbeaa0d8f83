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

#ifndef RFT_SYMBOLIC_HPP
#define RFT_SYMBOLIC_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rft/distribution.hpp"
#include "rft/iosa.hpp"

namespace rft {

enum class ExprKind { kBool, kInt, kVar, kIndex, kUnary, kBinary, kCall };

enum class Op {
  kNone,
  kOr,
  kAnd,
  kEq,
  kNe,
  kLt,
  kLe,
  kGt,
  kGe,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kNot,
  kNeg,
};

/// Expression tree.  kVar/kIndex/kCall use `name`; kIndex has the index in
/// args[0]; kCall lists its arguments (the first is a kVar naming an array
/// for every intrinsic).  Literals live in `value` (booleans as 0/1).
struct Expr {
  ExprKind kind = ExprKind::kBool;
  Op op = Op::kNone;
  std::int64_t value = 0;
  std::string name;
  std::vector<Expr> args;

  static Expr boolean(bool b);
  static Expr integer(std::int64_t v);
  static Expr var(std::string n);

  friend bool operator==(const Expr&, const Expr&) = default;
};

std::string print_expr(const Expr& e);

enum class VarType { kBool, kInt };

struct VarDecl {
  std::string name;
  VarType type = VarType::kInt;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t init = 0;
  std::optional<int> length;  // set for arrays

  friend bool operator==(const VarDecl&, const VarDecl&) = default;
};

enum class Decoration { kInput, kUrgentInput, kOutput, kUrgentOutput };

bool is_output(Decoration d);
bool is_urgent(Decoration d);

struct Assignment {
  std::string target;
  std::optional<Expr> index;  // array element when set
  Expr value;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct ClockReset {
  std::string clock;
  Distribution law;

  friend bool operator==(const ClockReset&, const ClockReset&) = default;
};

/// `label` is an action name, "_" for the input wildcard, or empty for the
/// silent urgent output `[!!]`.
struct SymbolicTransition {
  std::string label;
  Decoration decoration = Decoration::kInput;
  Expr guard = Expr::boolean(true);
  std::optional<std::string> clock;
  std::vector<Assignment> assignments;
  std::vector<ClockReset> resets;

  bool silent() const { return label.empty(); }
  bool wildcard() const { return label == "_"; }

  friend bool operator==(const SymbolicTransition&, const SymbolicTransition&) = default;
};

struct SymbolicModule {
  std::string name;
  std::vector<VarDecl> vars;  // scalars and arrays, in declaration order
  std::vector<std::string> clocks;
  std::vector<SymbolicTransition> transitions;

  const VarDecl* find_var(std::string_view n) const;
  /// Law of each clock, read off its resets.
  std::map<std::string, Distribution> clock_laws() const;

  friend bool operator==(const SymbolicModule&, const SymbolicModule&) = default;
};

/// Parses exactly one module.  Throws ParseError on syntax errors and on
/// static errors (types, ranges, undeclared names, clock misuse).
SymbolicModule parse_module(std::string_view text);

/// Parses one or more modules.  Comment lines (`// ...`) are ignored.
std::vector<SymbolicModule> parse_model(std::string_view text);

/// Canonical text: one declaration or transition per line.
std::string print_module(const SymbolicModule& m);
std::string print_model(const std::vector<SymbolicModule>& modules);

/// Name given to the silent urgent output of module `module`.
std::string silent_label(std::string_view module);

struct LabelInfo {
  bool urgent = false;
  std::string producer;  // empty when no module outputs the label
  std::vector<std::string> consumers;
};

/// Model-wide action table.  Throws IncompatibleComponents when two modules
/// output the same label or a label is used with different urgency.
using Alphabet = std::map<std::string, LabelInfo>;
Alphabet build_alphabet(const std::vector<SymbolicModule>& modules);

/// Explicit automaton of a module together with the valuation behind each
/// state.  Array elements occupy consecutive slots named `a[i]`.
struct ExpandedModule {
  IosaAutomaton automaton;
  std::vector<std::string> slot_names;
  std::vector<std::vector<std::int64_t>> valuations;

  int slot(std::string_view n) const;  // -1 if absent
};

/// Enumerates the valuations reachable from the initial one.  Input labels
/// with no enabled transition get a self-loop; `[_?]` stands for every
/// non-urgent output of another module.  Clock `c` of module `m` becomes
/// `m.c`.  Throws RangeOverflow (with the offending valuation) and
/// UnknownLabel.
ExpandedModule expand(const SymbolicModule& m, const Alphabet& alphabet);

}  // namespace rft

#endif  // RFT_SYMBOLIC_HPP
