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

#ifndef RFT_DETERMINISM_HPP
#define RFT_DETERMINISM_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rft/fault_tree.hpp"
#include "rft/iosa.hpp"
#include "rft/symbolic.hpp"

namespace rft {

/// Unordered action pair, stored with first <= second.
using ActionPair = std::pair<std::string, std::string>;
ActionPair make_pair_key(const std::string& a, const std::string& b);

struct ConfluenceReport {
  std::string module;
  /// Pair -> every state where the square fails to close.
  std::map<ActionPair, std::vector<std::string>> non_confluent;
  std::set<ActionPair> confluent;
};

/// Drops non-urgent transitions leaving states that enable an urgent output
/// (time cannot pass there) and then everything no longer reachable.
IosaAutomaton restrict_timed_to_stable(const IosaAutomaton& m);

/// Checks every pair of urgent actions of `m` (including a == b) on all
/// states of `m`.  For probabilistic moves the two orders must induce the
/// same distribution over final states.
ConfluenceReport check_confluence(const IosaAutomaton& m);

/// (a, b): a urgent, b urgent output, s1 -a-> s2 -b-> s3 and, if a != b,
/// s1 has no b transition.
std::set<ActionPair> triggering(const IosaAutomaton& m);

/// (a, b): a urgent, and b is enabled through a chain of immediate enablers
/// starting at an a transition, along a path of urgent outputs.  Sharper than
/// chaining triggering() inside one component, because the chain has to
/// happen on a single path.
std::set<ActionPair> cascade_triggering(const IosaAutomaton& m);

struct Spontaneity {
  std::set<std::string> initial;
  /// Non-urgent action -> the distinct non-empty sets of urgent outputs
  /// enabled right after it is taken from a stable state.
  std::map<std::string, std::set<std::set<std::string>>> spontaneous;
};

Spontaneity spontaneous_and_initial(const IosaAutomaton& m);

/// Pairs that may be non-confluent in the semantics of `tree` (FDEPs are
/// rewritten first; PAND chains are expanded into their 2-input stages).
std::set<ActionPair> expected_nonconfluent(const FaultTreeDef& tree);

/// Narrower variant where the gate/input pairs (f_g, u_in) and (u_g, f_in)
/// are listed for AND/OR parents only.  Kept for comparison with
/// expected_nonconfluent().
std::set<ActionPair> expected_nonconfluent_literal(const FaultTreeDef& tree);

struct ComponentAnalysis {
  std::string name;
  std::vector<std::string> members;  // module names; >1 for composed clusters
  std::size_t states = 0;
  ConfluenceReport confluence;
  std::set<ActionPair> triggering;  // ordered pairs (a, b)
  std::set<ActionPair> cascade;
  std::set<std::string> inputs, outputs;
  Spontaneity spontaneity;
};

struct Counterexample {
  ActionPair ab;
  std::string component;
  std::string witness;
  std::string c, d;
  bool initial = false;                    // condition 3(i)
  std::string e;                           // condition 3(ii)
  std::set<std::string> spontaneous_union;  // the B_i sets holding c and d
};

struct DeterminismVerdict {
  bool weakly_deterministic = true;
  bool closed = true;
  std::vector<ComponentAnalysis> components;
  /// Ordered pairs (c, a) with c approximately indirectly triggering a.
  std::set<ActionPair> closure;
  std::optional<Counterexample> counterexample;
};

/// Modules that talk to each other in both directions, at least one of them
/// urgently, are composed into one component before the analysis.
std::vector<std::vector<std::string>> urgent_clusters(const std::vector<SymbolicModule>& modules,
                                                      const Alphabet& alphabet);

/// Sufficient condition for weak determinism over a (closed) model.
DeterminismVerdict verdict(const std::vector<SymbolicModule>& modules);

}  // namespace rft

#endif  // RFT_DETERMINISM_HPP
