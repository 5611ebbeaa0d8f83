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

#ifndef RFT_COMPILER_HPP
#define RFT_COMPILER_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rft/fault_tree.hpp"
#include "rft/symbolic.hpp"

namespace rft {

inline constexpr std::string_view kMonitorModule = "TopMonitor";
inline constexpr std::string_view kMonitorVar = "failed";

/// Action names attached to one vertex.  Roles are the keys: fl, up, f, u, r
/// for basic elements, e and d for spares, f and u for gates.
struct VertexWiring {
  std::string vertex;
  ElementKind kind = ElementKind::kBe;
  std::vector<std::string> modules;
  std::map<std::string, std::string> actions;

  const std::string& action(const std::string& role) const { return actions.at(role); }
};

/// Spare-gate / spare pair: the five handshake actions between SG `gate` and
/// the multiplexer of SBE `spare`.
struct SparePair {
  std::string gate;
  std::string spare;
  std::string rq, asg, acc, rj, rel;
};

struct WiringPlan {
  std::vector<VertexWiring> vertices;  // tree declaration order
  std::vector<SparePair> pairs;
  std::string top;
  std::string top_fail;
  std::string top_up;

  const VertexWiring& at(std::string_view vertex) const;
  const SparePair& pair(std::string_view gate, std::string_view spare) const;
};

/// Assigns action and module names.  Throws IncompatibleComponents if two
/// generated names collide.
WiringPlan make_wiring(const FaultTreeDef& tree);

/// Template instance(s) for one vertex: two modules for an SBE (behaviour
/// and multiplexer), a chain of 2-input modules for PAND with more than two
/// inputs, one module otherwise.  FDEP vertices must have been rewritten.
std::vector<SymbolicModule> compile_vertex(const FaultTreeDef& tree, const Vertex& v,
                                           const WiringPlan& wiring);

/// Listener on the top event: `failed` follows the top's f/u signals.
SymbolicModule top_event_monitor(const WiringPlan& wiring);

struct CompiledModel {
  FaultTreeDef tree;  // FDEP-free
  WiringPlan wiring;
  std::vector<SymbolicModule> modules;  // without the monitor
};

/// Rewrites FDEPs, then compiles every vertex.  The tree must be valid.
CompiledModel compile_tree(const FaultTreeDef& tree);

/// The modules plus the top-event monitor: the closed model that gets checked
/// and simulated.
std::vector<SymbolicModule> closed_model(const CompiledModel& model);

/// `.iosa` text: a comment manifest followed by every module and the
/// monitor.
std::string emit_iosa(const CompiledModel& model);

}  // namespace rft

#endif  // RFT_COMPILER_HPP
