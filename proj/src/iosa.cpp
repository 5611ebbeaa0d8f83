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

#include "rft/iosa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include <boost/dynamic_bitset.hpp>

#include "rft/errors.hpp"

namespace rft {

int IosaAutomaton::action_index(std::string_view action) const {
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i].name == action) return static_cast<int>(i);
  }
  return -1;
}

int IosaAutomaton::clock_index(std::string_view clock) const {
  for (std::size_t i = 0; i < clocks.size(); ++i) {
    if (clocks[i].name == clock) return static_cast<int>(i);
  }
  return -1;
}

std::vector<std::vector<int>> IosaAutomaton::outgoing() const {
  std::vector<std::vector<int>> out(state_names.size());
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    out[transitions[i].source].push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<Move> IosaAutomaton::moves(const std::vector<int>& out) const {
  std::vector<Move> result;
  std::map<int, std::size_t> by_branch;
  for (int ti : out) {
    const Transition& t = transitions[ti];
    Move* m = nullptr;
    if (t.branch >= 0) {
      auto it = by_branch.find(t.branch);
      if (it != by_branch.end()) m = &result[it->second];
    }
    if (m == nullptr) {
      result.push_back(Move{t.action, t.enabling, t.resets, {}, {}});
      m = &result.back();
      if (t.branch >= 0) by_branch[t.branch] = result.size() - 1;
    }
    m->transitions.push_back(ti);
    auto it = std::find_if(m->outcomes.begin(), m->outcomes.end(),
                           [&](const auto& o) { return o.first == t.target; });
    if (it == m->outcomes.end()) {
      m->outcomes.emplace_back(t.target, t.probability);
    } else {
      it->second += t.probability;
    }
  }
  for (auto& m : result) std::sort(m.outcomes.begin(), m.outcomes.end());
  return result;
}

ClockSet IosaAutomaton::enabling(const std::vector<int>& out) const {
  ClockSet result;
  for (int ti : out) {
    const auto& t = transitions[ti];
    if (t.enabling.size() == 1) result.push_back(t.enabling.front());
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

bool IosaAutomaton::stable(const std::vector<int>& out) const {
  for (int ti : out) {
    const Action& a = actions[transitions[ti].action];
    if (a.urgent && a.is_output()) return false;
  }
  return true;
}

std::string format_clock_set(const IosaAutomaton& a, const ClockSet& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ',';
    out += a.clocks[set[i]].name;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------

std::vector<ConstraintViolation> check_def1(const IosaAutomaton& a) {
  std::vector<ConstraintViolation> out;
  const int n = a.num_states();
  const auto succ = a.outgoing();

  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    const Transition& t = a.transitions[i];
    const Action& act = a.actions[t.action];
    int ti = static_cast<int>(i);
    if ((!act.is_output() || act.urgent) && !t.enabling.empty()) {
      out.push_back({'a', t.source, ti,
                     "input or urgent action '" + act.name + "' guarded by clocks"});
    }
    if (act.is_output() && !act.urgent && t.enabling.size() != 1) {
      out.push_back({'b', t.source, ti,
                     "non-urgent output '" + act.name + "' needs exactly one clock"});
    }
  }

  for (int s = 0; s < n; ++s) {
    const auto moves = a.moves(succ[s]);
    std::map<int, const Move*> by_clock;
    std::map<int, const Move*> by_input;
    for (const Move& m : moves) {
      const Action& act = a.actions[m.action];
      if (m.enabling.size() == 1) {
        auto [it, fresh] = by_clock.emplace(m.enabling.front(), &m);
        if (!fresh && !it->second->same_effect(m)) {
          out.push_back({'c', s, m.transitions.front(),
                         "clock '" + a.clocks[m.enabling.front()].name +
                             "' enables two different transitions"});
        }
      }
      if (!act.is_output()) {
        auto [it, fresh] = by_input.emplace(m.action, &m);
        if (!fresh && !it->second->same_effect(m)) {
          out.push_back({'e', s, m.transitions.front(),
                         "input '" + act.name + "' is not deterministic"});
        }
      }
    }
    for (std::size_t ai = 0; ai < a.actions.size(); ++ai) {
      if (a.actions[ai].is_output()) continue;
      if (!by_input.count(static_cast<int>(ai))) {
        out.push_back({'d', s, -1, "input '" + a.actions[ai].name + "' not enabled"});
      }
    }
  }

  // (f): greatest fixpoint of the upper bounds imposed by (i), (iii), (iv).
  using Bits = boost::dynamic_bitset<>;
  const std::size_t nc = a.clocks.size();
  auto to_bits = [&](const ClockSet& cs) {
    Bits b(nc);
    for (int c : cs) b.set(c);
    return b;
  };
  std::vector<Bits> active(n, Bits(nc));
  std::vector<Bits> enabled(n);
  std::vector<char> stable(n);
  for (int s = 0; s < n; ++s) {
    enabled[s] = to_bits(a.enabling(succ[s]));
    stable[s] = a.stable(succ[s]);
    active[s] = stable[s] ? enabled[s] : Bits(nc).set();
  }
  if (n > 0) {
    Bits c0 = to_bits(a.initial_clocks);
    if (!active[a.initial_state].is_subset_of(c0)) {
      if (stable[a.initial_state]) {
        out.push_back({'f', a.initial_state, -1,
                       "initial state enables clocks outside C0 (item i)"});
      }
      active[a.initial_state] &= c0;
    }
  }
  std::vector<Bits> resets(a.transitions.size()), guards(a.transitions.size());
  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    resets[i] = to_bits(a.transitions[i].resets);
    guards[i] = to_bits(a.transitions[i].enabling);
  }
  std::deque<int> work;
  std::vector<char> queued(n, 1);
  for (int s = 0; s < n; ++s) work.push_back(s);
  std::set<int> reported;
  while (!work.empty()) {
    int t = work.front();
    work.pop_front();
    queued[t] = 0;
    for (int ti : succ[t]) {
      const Transition& tr = a.transitions[ti];
      Bits bound = (active[t] - guards[ti]) | resets[ti];
      int s = tr.target;
      if (active[s].is_subset_of(bound)) continue;
      if (stable[s]) {
        if (reported.insert(ti).second) {
          out.push_back({'f', tr.source, ti,
                         "stable target needs a clock that is not kept active (item iv)"});
        }
        continue;
      }
      active[s] &= bound;
      if (!queued[s]) {
        queued[s] = 1;
        work.push_back(s);
      }
    }
  }
  for (int s = 0; s < n; ++s) {
    if (!stable[s] && !enabled[s].is_subset_of(active[s])) {
      out.push_back({'f', s, -1, "enabled clock cannot be active (item ii)"});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

IosaAutomaton compose(const IosaAutomaton& a, const IosaAutomaton& b, Pruning pruning) {
  for (const auto& ca : a.clocks) {
    if (b.clock_index(ca.name) >= 0) {
      throw IncompatibleComponents("components share clock '" + ca.name + "'");
    }
  }
  IosaAutomaton r;
  r.name = a.name + "||" + b.name;
  std::vector<int> map_a(a.actions.size()), map_b(b.actions.size());
  std::vector<int> shared_a(a.actions.size(), -1);
  r.actions = a.actions;
  for (std::size_t i = 0; i < a.actions.size(); ++i) map_a[i] = static_cast<int>(i);
  for (std::size_t j = 0; j < b.actions.size(); ++j) {
    const Action& act = b.actions[j];
    int i = a.action_index(act.name);
    if (i < 0) {
      map_b[j] = static_cast<int>(r.actions.size());
      r.actions.push_back(act);
      continue;
    }
    const Action& other = a.actions[i];
    if (other.is_output() && act.is_output()) {
      throw IncompatibleComponents("components share output '" + act.name + "'");
    }
    if (other.urgent != act.urgent) {
      throw IncompatibleComponents("urgency mismatch on '" + act.name + "'");
    }
    map_b[j] = i;
    shared_a[i] = static_cast<int>(j);
    if (act.is_output()) r.actions[i].direction = Direction::kOutput;
  }
  const int offset = static_cast<int>(a.clocks.size());
  r.clocks = a.clocks;
  r.clocks.insert(r.clocks.end(), b.clocks.begin(), b.clocks.end());
  r.initial_clocks = a.initial_clocks;
  for (int c : b.initial_clocks) r.initial_clocks.push_back(c + offset);

  auto shift = [&](const ClockSet& cs) {
    ClockSet out;
    for (int c : cs) out.push_back(c + offset);
    return out;
  };
  auto join = [](ClockSet x, const ClockSet& y) {
    x.insert(x.end(), y.begin(), y.end());
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    return x;
  };

  const auto out_a = a.outgoing();
  const auto out_b = b.outgoing();
  std::vector<std::vector<Move>> moves_a(a.num_states()), moves_b(b.num_states());
  for (int s = 0; s < a.num_states(); ++s) moves_a[s] = a.moves(out_a[s]);
  for (int s = 0; s < b.num_states(); ++s) moves_b[s] = b.moves(out_b[s]);
  auto urgent_out = [](const IosaAutomaton& x, const std::vector<std::vector<Move>>& mv) {
    std::vector<char> u(mv.size(), 0);
    for (std::size_t s = 0; s < mv.size(); ++s) {
      for (const Move& m : mv[s]) {
        const Action& act = x.actions[m.action];
        if (act.urgent && act.is_output()) u[s] = 1;
      }
    }
    return u;
  };
  const auto unstable_a = urgent_out(a, moves_a);
  const auto unstable_b = urgent_out(b, moves_b);
  std::vector<char> shared_b(b.actions.size(), 0);
  for (std::size_t j = 0; j < b.actions.size(); ++j) {
    shared_b[j] = a.action_index(b.actions[j].name) >= 0;
  }

  const auto nb = static_cast<std::uint64_t>(b.num_states());
  std::unordered_map<std::uint64_t, int> ids;
  std::vector<std::pair<int, int>> pairs;
  std::deque<int> work;
  auto intern = [&](int sa, int sb) {
    std::uint64_t key = static_cast<std::uint64_t>(sa) * nb + static_cast<std::uint64_t>(sb);
    auto [it, fresh] = ids.emplace(key, static_cast<int>(pairs.size()));
    if (fresh) {
      pairs.emplace_back(sa, sb);
      r.state_names.push_back("(" + a.state_names[sa] + "," + b.state_names[sb] + ")");
      work.push_back(it->second);
    }
    return it->second;
  };
  int next_branch = 0;
  auto emit = [&](int src, int action, const ClockSet& guard, const ClockSet& reset,
                  const std::vector<std::tuple<int, int, double>>& outcomes) {
    int branch = outcomes.size() > 1 ? next_branch++ : -1;
    for (const auto& [ta, tb, p] : outcomes) {
      int tgt = intern(ta, tb);
      r.transitions.push_back(Transition{src, guard, action, reset, tgt, p, branch});
    }
  };

  r.initial_state = intern(a.initial_state, b.initial_state);
  while (!work.empty()) {
    int id = work.front();
    work.pop_front();
    auto [sa, sb] = pairs[id];
    const bool prune =
        pruning == Pruning::kStableTimed && (unstable_a[sa] || unstable_b[sb]);
    for (const Move& m : moves_a[sa]) {
      if (prune && !a.actions[m.action].urgent) continue;
      if (shared_a[m.action] >= 0) {
        for (const Move& mb : moves_b[sb]) {
          if (mb.action != shared_a[m.action]) continue;
          std::vector<std::tuple<int, int, double>> outs;
          for (auto [ta, pa] : m.outcomes) {
            for (auto [tb, pb] : mb.outcomes) outs.emplace_back(ta, tb, pa * pb);
          }
          emit(id, map_a[m.action], join(m.enabling, shift(mb.enabling)),
               join(m.resets, shift(mb.resets)), outs);
        }
        continue;
      }
      std::vector<std::tuple<int, int, double>> outs;
      for (auto [ta, pa] : m.outcomes) outs.emplace_back(ta, sb, pa);
      emit(id, map_a[m.action], m.enabling, m.resets, outs);
    }
    for (const Move& m : moves_b[sb]) {
      if (shared_b[m.action] || (prune && !b.actions[m.action].urgent)) continue;
      std::vector<std::tuple<int, int, double>> outs;
      for (auto [tb, pb] : m.outcomes) outs.emplace_back(sa, tb, pb);
      emit(id, map_b[m.action], shift(m.enabling), shift(m.resets), outs);
    }
  }
  return r;
}

IosaAutomaton compose_all(const std::vector<IosaAutomaton>& parts, Pruning pruning) {
  if (parts.empty()) return {};
  IosaAutomaton acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = compose(acc, parts[i], pruning);
  return acc;
}

bool closed(const IosaAutomaton& a) {
  for (const auto& t : a.transitions) {
    if (!a.actions[t.action].is_output()) return false;
  }
  return true;
}

bool closed(const std::vector<IosaAutomaton>& network) {
  std::set<std::string> produced;
  for (const auto& m : network) {
    for (const auto& act : m.actions) {
      if (act.is_output()) produced.insert(act.name);
    }
  }
  for (const auto& m : network) {
    for (const auto& act : m.actions) {
      if (!act.is_output() && !produced.count(act.name)) return false;
    }
  }
  return true;
}

std::string dump(const IosaAutomaton& a) {
  std::vector<std::string> lines;
  lines.reserve(a.transitions.size());
  for (const auto& t : a.transitions) {
    std::string line = a.state_names[t.source] + " --" + format_clock_set(a, t.enabling) +
                       "," + a.actions[t.action].name + "," +
                       format_clock_set(a, t.resets) + "--> " + a.state_names[t.target];
    if (t.branch >= 0) line += " p=" + format_double(t.probability);
    lines.push_back(std::move(line));
  }
  std::stable_sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace rft
