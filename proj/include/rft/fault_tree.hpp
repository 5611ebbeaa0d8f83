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

#ifndef RFT_FAULT_TREE_HPP
#define RFT_FAULT_TREE_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rft/distribution.hpp"

namespace rft {

enum class ElementKind { kBe, kSbe, kAnd, kOr, kPand, kVot, kFdep, kSg, kRbox };
enum class RepairPolicy { kPriority, kFcfs, kRandom };

std::string_view kind_name(ElementKind kind);
std::string_view policy_name(RepairPolicy policy);

inline bool is_basic(ElementKind k) {
  return k == ElementKind::kBe || k == ElementKind::kSbe;
}

struct ElementLabel {
  ElementKind kind = ElementKind::kBe;
  int k = 0;                                   // VOT threshold
  RepairPolicy policy = RepairPolicy::kPriority;  // RBOX only
  std::optional<Distribution> active_fail;     // BE/SBE
  std::optional<Distribution> dormant_fail;    // SBE
  std::optional<Distribution> repair;          // BE/SBE

  friend bool operator==(const ElementLabel&, const ElementLabel&) = default;
};

struct Vertex {
  std::string name;
  ElementLabel label;
  std::vector<std::string> inputs;  // ordered; arity == inputs.size()

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Repairable fault tree: vertices in declaration order (the labelling and
/// input functions live on each Vertex), spare users per SBE, and the top.
struct FaultTreeDef {
  std::vector<Vertex> vertices;
  std::map<std::string, std::vector<std::string>> spare_users;
  std::string top;

  const Vertex* find(std::string_view name) const;
  Vertex* find(std::string_view name);

  /// Vertices that list `name` among their inputs, in declaration order.
  std::vector<const Vertex*> parents(std::string_view name) const;

  friend bool operator==(const FaultTreeDef&, const FaultTreeDef&) = default;
};

FaultTreeDef parse_rft(std::string_view text);
std::string print_rft(const FaultTreeDef& tree);

enum class Rule {
  kArity,
  kAcyclicity,
  kTopKind,
  kUniqueTop,
  kRepeatedInput,
  kDummyOutput,
  kRboxInputKind,
  kSingleRbox,
  kMissingRbox,
  kSpareGateInputs,
  kSbeParentKind,
  kSpareUsers,
  kSingleSpareGate,
  kSpareFdepConflict,
};

std::string_view rule_name(Rule rule);

struct Violation {
  Rule rule;
  std::vector<std::string> vertices;
  std::string message;
};

std::vector<Violation> validate_rft(const FaultTreeDef& tree);

/// Basic elements that feed no gate (only their repair box). Accepted, but
/// worth a warning.
std::vector<std::string> dangling_leaves(const FaultTreeDef& tree);

/// Replaces every FDEP by OR gates: each dependent d of an FDEP with trigger
/// t is wrapped in a fresh OR(t, d) that takes d's place in all its
/// non-FDEP, non-RBOX parents.  Identity on FDEP-free trees.
FaultTreeDef rewrite_fdep(const FaultTreeDef& tree);

}  // namespace rft

#endif  // RFT_FAULT_TREE_HPP
