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

#ifndef RFT_IOSA_HPP
#define RFT_IOSA_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rft/distribution.hpp"

namespace rft {

enum class Direction { kInput, kOutput };

struct Action {
  std::string name;
  Direction direction = Direction::kInput;
  bool urgent = false;

  bool is_output() const { return direction == Direction::kOutput; }
  friend bool operator==(const Action&, const Action&) = default;
};

struct Clock {
  std::string name;
  Distribution law;
};

/// Sorted, duplicate-free clock indices.
using ClockSet = std::vector<int>;

/// s --C, a, C'--> s'.  Transitions sharing a non-negative `branch` id form a
/// single probabilistic choice (same source, action, C and C'); their
/// probabilities sum to one.  Ordinary transitions have branch == -1 and
/// probability 1.
struct Transition {
  int source = 0;
  ClockSet enabling;
  int action = 0;
  ClockSet resets;
  int target = 0;
  double probability = 1.0;
  int branch = -1;
};

/// One resolved choice out of a state: the enabling/reset sets plus the
/// distribution over targets.
struct Move {
  int action = 0;
  ClockSet enabling;
  ClockSet resets;
  std::vector<std::pair<int, double>> outcomes;  // sorted by target
  std::vector<int> transitions;                  // indices into the automaton

  bool same_effect(const Move& other) const {
    return action == other.action && enabling == other.enabling &&
           resets == other.resets && outcomes == other.outcomes;
  }
};

/// Finite, explicitly enumerated input/output stochastic automaton with
/// urgency.  States are 0..num_states()-1 with human-readable names.
class IosaAutomaton {
 public:
  std::string name;
  std::vector<std::string> state_names;
  std::vector<Action> actions;
  std::vector<Clock> clocks;
  std::vector<Transition> transitions;
  ClockSet initial_clocks;
  int initial_state = 0;

  int num_states() const { return static_cast<int>(state_names.size()); }
  int action_index(std::string_view action) const;  // -1 if absent
  int clock_index(std::string_view clock) const;    // -1 if absent

  /// Transition indices grouped by source state.
  std::vector<std::vector<int>> outgoing() const;

  /// Moves out of `state`, built from the transitions listed in `out`.
  std::vector<Move> moves(const std::vector<int>& out) const;

  ClockSet enabling(const std::vector<int>& out) const;
  bool stable(const std::vector<int>& out) const;
};

struct ConstraintViolation {
  char item;  // 'a' .. 'f'
  int state = -1;
  int transition = -1;
  std::string message;
};

/// Checks constraints (a)-(f) of the IOSA definition.  For (f) the largest
/// `active` assignment compatible with (i), (iii) and (iv) is computed by a
/// downward fixpoint and then checked against (ii).
std::vector<ConstraintViolation> check_def1(const IosaAutomaton& a);

/// kStableTimed skips non-urgent transitions out of product states that enable
/// an urgent output.  In a closed network such a step needs two events at the
/// same instant, so it has probability zero.
enum class Pruning { kNone, kStableTimed };

/// Parallel composition restricted to the reachable product.  Shared actions
/// synchronise (output with input yields output, input with input yields
/// input); the rest interleave.  Throws IncompatibleComponents.
IosaAutomaton compose(const IosaAutomaton& a, const IosaAutomaton& b,
                      Pruning pruning = Pruning::kNone);

/// Left fold of compose().
IosaAutomaton compose_all(const std::vector<IosaAutomaton>& parts,
                          Pruning pruning = Pruning::kNone);

/// True iff no transition carries an input action.
bool closed(const IosaAutomaton& a);

/// True iff every input action of every component is an output of some
/// component.
bool closed(const std::vector<IosaAutomaton>& network);

/// One transition per line, `src --{C},action,{C'}--> tgt`, sorted.
std::string dump(const IosaAutomaton& a);

std::string format_clock_set(const IosaAutomaton& a, const ClockSet& set);

}  // namespace rft

#endif  // RFT_IOSA_HPP
