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

#include "rft/determinism.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include <boost/dynamic_bitset.hpp>

#include "rft/compiler.hpp"

namespace rft {

ActionPair make_pair_key(const std::string& a, const std::string& b) {
  return a <= b ? ActionPair{a, b} : ActionPair{b, a};
}

namespace {

using Dist = std::vector<std::pair<int, double>>;

bool is_urgent_output(const Action& a) { return a.urgent && a.is_output(); }

const Move* matching(const std::vector<Move>& moves, const Move& like) {
  for (const auto& m : moves) {
    if (m.action == like.action && m.enabling == like.enabling && m.resets == like.resets) {
      return &m;
    }
  }
  return nullptr;
}

void add_scaled(Dist& into, const Dist& d, double p) {
  for (auto [s, q] : d) {
    auto it = std::find_if(into.begin(), into.end(), [&](const auto& x) { return x.first == s; });
    if (it == into.end()) {
      into.emplace_back(s, p * q);
    } else {
      it->second += p * q;
    }
  }
}

bool same_dist(Dist x, Dist y) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].first != y[i].first || std::abs(x[i].second - y[i].second) > 1e-12) return false;
  }
  return true;
}

// Does the square (first x then y) / (first y then x) close?
bool closes(const std::vector<std::vector<Move>>& moves, const Move& x, const Move& y) {
  if (x.outcomes.size() == 1 && y.outcomes.size() == 1) {
    std::set<int> via_x, via_y;
    for (const auto& m : moves[x.outcomes[0].first]) {
      if (m.action == y.action && m.enabling == y.enabling && m.resets == y.resets &&
          m.outcomes.size() == 1) {
        via_x.insert(m.outcomes[0].first);
      }
    }
    for (const auto& m : moves[y.outcomes[0].first]) {
      if (m.action == x.action && m.enabling == x.enabling && m.resets == x.resets &&
          m.outcomes.size() == 1 && via_x.count(m.outcomes[0].first)) {
        return true;
      }
    }
    return false;
  }
  auto then = [&](const Move& first, const Move& second, Dist& out) {
    for (auto [s1, p] : first.outcomes) {
      const Move* m = matching(moves[s1], second);
      if (!m) return false;
      add_scaled(out, m->outcomes, p);
    }
    return true;
  };
  Dist xy, yx;
  return then(x, y, xy) && then(y, x, yx) && same_dist(xy, yx);
}

std::vector<std::vector<Move>> all_moves(const IosaAutomaton& m) {
  const auto out = m.outgoing();
  std::vector<std::vector<Move>> moves(m.num_states());
  for (int s = 0; s < m.num_states(); ++s) moves[s] = m.moves(out[s]);
  return moves;
}

// Urgent outputs with a transition out of each state.
std::vector<std::set<int>> urgent_outputs_enabled(const IosaAutomaton& m) {
  std::vector<std::set<int>> en(m.num_states());
  for (const auto& t : m.transitions) {
    if (is_urgent_output(m.actions[t.action])) en[t.source].insert(t.action);
  }
  return en;
}

using Bits = boost::dynamic_bitset<>;

// Follows immediate enablers along paths of urgent outputs.  Outputs in the
// taint were caused by the seed; firing a tainted output taints whatever it
// newly enables, an untainted one taints nothing.
class Tainter {
 public:
  explicit Tainter(const IosaAutomaton& m) : m_(m), out_(m.outgoing()) {
    const auto sets = urgent_outputs_enabled(m);
    en_.assign(m.num_states(), Bits(m.actions.size()));
    for (int s = 0; s < m.num_states(); ++s) {
      for (int b : sets[s]) en_[s].set(b);
    }
  }

  const Bits& enabled(int s) const { return en_[s]; }

  // Everything tainted at some point when starting in `state` with `taint`.
  Bits run(int state, Bits taint) {
    Bits hit(m_.actions.size());
    seen_.clear();
    stack_.assign(1, {state, std::move(taint)});
    while (!stack_.empty()) {
      auto [q, tq] = std::move(stack_.back());
      stack_.pop_back();
      if (tq.none() || !seen_.emplace(q, tq).second) continue;
      hit |= tq;
      for (int ti : out_[q]) {
        const Transition& u = m_.transitions[ti];
        if (!is_urgent_output(m_.actions[u.action])) continue;
        Bits next = tq & en_[u.target];
        if (tq.test(u.action)) next |= en_[u.target] - en_[q];
        stack_.emplace_back(u.target, std::move(next));
      }
    }
    return hit;
  }

 private:
  const IosaAutomaton& m_;
  std::vector<std::vector<int>> out_;
  std::vector<Bits> en_;
  std::set<std::pair<int, Bits>> seen_;
  std::vector<std::pair<int, Bits>> stack_;
};

std::set<std::string> names_of(const IosaAutomaton& m, const Bits& bits) {
  std::set<std::string> out;
  for (auto b = bits.find_first(); b != Bits::npos; b = bits.find_next(b)) {
    out.insert(m.actions[b].name);
  }
  return out;
}

}  // namespace

IosaAutomaton restrict_timed_to_stable(const IosaAutomaton& m) {
  const auto out = m.outgoing();
  std::vector<char> stable(m.num_states());
  for (int s = 0; s < m.num_states(); ++s) stable[s] = m.stable(out[s]);
  auto keep = [&](const Transition& t) { return m.actions[t.action].urgent || stable[t.source]; };
  std::vector<int> id(m.num_states(), -1);
  IosaAutomaton r;
  r.name = m.name;
  r.actions = m.actions;
  r.clocks = m.clocks;
  r.initial_clocks = m.initial_clocks;
  if (m.num_states() == 0) return r;
  std::deque<int> work{m.initial_state};
  id[m.initial_state] = 0;
  r.state_names.push_back(m.state_names[m.initial_state]);
  std::vector<int> order{m.initial_state};
  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    for (int ti : out[s]) {
      const Transition& t = m.transitions[ti];
      if (!keep(t) || id[t.target] >= 0) continue;
      id[t.target] = static_cast<int>(r.state_names.size());
      r.state_names.push_back(m.state_names[t.target]);
      order.push_back(t.target);
      work.push_back(t.target);
    }
  }
  for (int s : order) {
    for (int ti : out[s]) {
      Transition t = m.transitions[ti];
      if (!keep(t)) continue;
      t.source = id[t.source];
      t.target = id[t.target];
      r.transitions.push_back(std::move(t));
    }
  }
  r.initial_state = 0;
  return r;
}

ConfluenceReport check_confluence(const IosaAutomaton& m) {
  ConfluenceReport r;
  r.module = m.name;
  const auto moves = all_moves(m);
  for (int s = 0; s < m.num_states(); ++s) {
    const auto& ms = moves[s];
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (!m.actions[ms[i].action].urgent) continue;
      for (std::size_t j = i + 1; j < ms.size(); ++j) {
        if (!m.actions[ms[j].action].urgent || ms[i].same_effect(ms[j])) continue;
        ActionPair key =
            make_pair_key(m.actions[ms[i].action].name, m.actions[ms[j].action].name);
        if (!closes(moves, ms[i], ms[j])) {
          auto& w = r.non_confluent[key];
          if (w.empty() || w.back() != m.state_names[s]) w.push_back(m.state_names[s]);
        }
      }
    }
  }
  std::vector<std::string> urgent;
  for (const auto& a : m.actions) {
    if (a.urgent) urgent.push_back(a.name);
  }
  for (std::size_t i = 0; i < urgent.size(); ++i) {
    for (std::size_t j = i; j < urgent.size(); ++j) {
      ActionPair key = make_pair_key(urgent[i], urgent[j]);
      if (!r.non_confluent.count(key)) r.confluent.insert(key);
    }
  }
  return r;
}

std::set<ActionPair> triggering(const IosaAutomaton& m) {
  std::set<ActionPair> rel;
  const auto en = urgent_outputs_enabled(m);
  for (const auto& t : m.transitions) {
    const Action& a = m.actions[t.action];
    if (!a.urgent) continue;
    for (int b : en[t.target]) {
      if (b == t.action || !en[t.source].count(b)) rel.emplace(a.name, m.actions[b].name);
    }
  }
  return rel;
}

std::set<ActionPair> cascade_triggering(const IosaAutomaton& m) {
  Tainter tainter(m);
  std::map<int, Bits> reach;
  for (const auto& t : m.transitions) {
    const Action& a = m.actions[t.action];
    if (!a.urgent) continue;
    Bits taint = tainter.enabled(t.target) - tainter.enabled(t.source);
    if (a.is_output() && tainter.enabled(t.target).test(t.action)) taint.set(t.action);
    Bits hit = tainter.run(t.target, std::move(taint));
    auto [it, fresh] = reach.try_emplace(t.action, std::move(hit));
    if (!fresh) it->second |= hit;
  }
  std::set<ActionPair> rel;
  for (const auto& [a, hit] : reach) {
    for (const auto& b : names_of(m, hit)) rel.emplace(m.actions[a].name, b);
  }
  return rel;
}

Spontaneity spontaneous_and_initial(const IosaAutomaton& m) {
  Spontaneity sp;
  const auto en = urgent_outputs_enabled(m);
  auto names = [&](const std::set<int>& ids) {
    std::set<std::string> out;
    for (int i : ids) out.insert(m.actions[i].name);
    return out;
  };
  if (m.num_states() > 0) sp.initial = names(en[m.initial_state]);
  for (const auto& t : m.transitions) {
    const Action& b = m.actions[t.action];
    if (b.urgent || !en[t.source].empty() || en[t.target].empty()) continue;
    sp.spontaneous[b.name].insert(names(en[t.target]));
  }
  return sp;
}

namespace {

struct Stage {
  std::string f, u;
  std::vector<std::pair<std::string, std::string>> inputs;  // (f, u)
  bool second_clause_literal = false;
};

std::vector<Stage> gate_stages(const FaultTreeDef& tree) {
  const WiringPlan wiring = make_wiring(tree);
  std::vector<Stage> stages;
  for (const auto& v : tree.vertices) {
    ElementKind k = v.label.kind;
    if (k != ElementKind::kAnd && k != ElementKind::kOr && k != ElementKind::kPand &&
        k != ElementKind::kVot) {
      continue;
    }
    std::vector<std::pair<std::string, std::string>> in;
    for (const auto& i : v.inputs) {
      const auto& w = wiring.at(i);
      in.emplace_back(w.action("f"), w.action("u"));
    }
    const auto& w = wiring.at(v.name);
    if (k != ElementKind::kPand) {
      stages.push_back({w.action("f"), w.action("u"), in,
                        k == ElementKind::kAnd || k == ElementKind::kOr});
      continue;
    }
    auto left = in[0];
    for (std::size_t j = 1; j < in.size(); ++j) {
      bool last = j + 1 == in.size();
      std::string inner = v.name + "_pand" + std::to_string(j);
      std::pair<std::string, std::string> out =
          last ? std::make_pair(w.action("f"), w.action("u"))
               : std::make_pair("f_" + inner, "u_" + inner);
      stages.push_back({out.first, out.second, {left, in[j]}, false});
      left = out;
    }
  }
  return stages;
}

std::set<ActionPair> prop_pairs(const FaultTreeDef& tree, bool literal) {
  std::set<ActionPair> out;
  for (const auto& st : gate_stages(rewrite_fdep(tree))) {
    for (const auto& [f, u1] : st.inputs) {
      for (const auto& [f2, u] : st.inputs) out.insert(make_pair_key(f, u));
    }
    if (literal && !st.second_clause_literal) continue;
    for (const auto& [f, u] : st.inputs) {
      out.insert(make_pair_key(st.f, u));
      out.insert(make_pair_key(st.u, f));
    }
  }
  return out;
}

}  // namespace

std::set<ActionPair> expected_nonconfluent(const FaultTreeDef& tree) {
  return prop_pairs(tree, false);
}

std::set<ActionPair> expected_nonconfluent_literal(const FaultTreeDef& tree) {
  return prop_pairs(tree, true);
}

std::vector<std::vector<std::string>> urgent_clusters(const std::vector<SymbolicModule>& modules,
                                                      const Alphabet& alphabet) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < modules.size(); ++i) index[modules[i].name] = static_cast<int>(i);
  const std::size_t n = modules.size();
  std::vector<std::set<int>> sends(n), sends_urgent(n);
  for (const auto& [label, info] : alphabet) {
    if (info.producer.empty()) continue;
    int p = index.at(info.producer);
    for (const auto& c : info.consumers) {
      sends[p].insert(index.at(c));
      if (info.urgent) sends_urgent[p].insert(index.at(c));
    }
  }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (int j : sends_urgent[i]) {
      if (sends[j].count(static_cast<int>(i))) parent[find(static_cast<int>(i))] = find(j);
    }
  }
  std::map<int, std::vector<std::string>> groups;
  std::vector<int> order;
  for (std::size_t i = 0; i < n; ++i) {
    int root = find(static_cast<int>(i));
    if (!groups.count(root)) order.push_back(root);
    groups[root].push_back(modules[i].name);
  }
  std::vector<std::vector<std::string>> out;
  for (int r : order) out.push_back(groups[r]);
  return out;
}

namespace {

// Seed action -> outputs it ends up enabling, for one concrete start state.
using SeedRun = std::map<std::string, std::set<std::string>>;

struct Seeds {
  SeedRun initial;
  std::map<std::string, std::vector<SeedRun>> timed;  // per non-urgent action
};

// Greedy order that keeps intermediate products small: always add the
// module sharing the most actions with what is already composed.
std::vector<std::string> composition_order(const std::vector<std::string>& cluster,
                                           const std::map<std::string, IosaAutomaton>& automata) {
  std::vector<std::set<std::string>> alpha;
  for (const auto& name : cluster) {
    std::set<std::string> names;
    for (const auto& act : automata.at(name).actions) names.insert(act.name);
    alpha.push_back(std::move(names));
  }
  auto overlap = [](const std::set<std::string>& x, const std::set<std::string>& y) {
    std::size_t n = 0;
    for (const auto& a : x) n += y.count(a);
    return n;
  };
  std::vector<char> used(cluster.size(), 0);
  std::set<std::string> acc;
  std::vector<std::string> order;
  for (std::size_t step = 0; step < cluster.size(); ++step) {
    std::size_t best = cluster.size(), score = 0;
    for (std::size_t i = 0; i < cluster.size(); ++i) {
      if (used[i]) continue;
      std::size_t sc = overlap(alpha[i], acc);
      if (best == cluster.size() || sc > score) {
        best = i;
        score = sc;
      }
    }
    used[best] = 1;
    acc.insert(alpha[best].begin(), alpha[best].end());
    order.push_back(cluster[best]);
  }
  return order;
}

Seeds seed_runs(const IosaAutomaton& m) {
  Seeds sd;
  if (m.num_states() == 0) return sd;
  Tainter tainter(m);
  const std::size_t na = m.actions.size();
  auto run_from = [&](int state) {
    SeedRun run;
    const Bits& en = tainter.enabled(state);
    for (auto c = en.find_first(); c != Bits::npos; c = en.find_next(c)) {
      Bits seed(na);
      seed.set(c);
      run.emplace(m.actions[c].name, names_of(m, tainter.run(state, seed)));
    }
    return run;
  };
  sd.initial = run_from(m.initial_state);
  std::set<std::pair<int, int>> done;
  for (const auto& t : m.transitions) {
    if (m.actions[t.action].urgent || tainter.enabled(t.source).any()) continue;
    if (tainter.enabled(t.target).none() || !done.emplace(t.action, t.target).second) continue;
    sd.timed[m.actions[t.action].name].push_back(run_from(t.target));
  }
  return sd;
}

}  // namespace

DeterminismVerdict verdict(const std::vector<SymbolicModule>& modules) {
  DeterminismVerdict v;
  const Alphabet alphabet = build_alphabet(modules);
  for (const auto& [label, info] : alphabet) {
    if (info.producer.empty() && !info.consumers.empty()) v.closed = false;
  }
  std::map<std::string, IosaAutomaton> automata;
  for (const auto& m : modules) automata[m.name] = expand(m, alphabet).automaton;
  std::vector<Seeds> seeds;

  for (const auto& cluster : urgent_clusters(modules, alphabet)) {
    std::vector<IosaAutomaton> parts;
    for (const auto& name : composition_order(cluster, automata)) {
      parts.push_back(automata.at(name));
    }
    IosaAutomaton a = restrict_timed_to_stable(compose_all(parts, Pruning::kStableTimed));
    ComponentAnalysis c;
    c.name = a.name;
    c.members = cluster;
    c.states = static_cast<std::size_t>(a.num_states());
    c.confluence = check_confluence(a);
    c.triggering = triggering(a);
    c.cascade = cascade_triggering(a);
    for (const auto& act : a.actions) {
      if (act.is_output()) {
        c.outputs.insert(act.name);
      } else {
        c.inputs.insert(act.name);
      }
    }
    c.spontaneity = spontaneous_and_initial(a);
    seeds.push_back(seed_runs(a));
    v.components.push_back(std::move(c));
  }

  // Chains cascades across components: an output reached inside one
  // component continues only in the components that consume it.  Chains
  // inside a component are already covered by its cascade relation.
  std::vector<std::map<std::string, std::set<std::string>>> succ(v.components.size());
  std::map<std::string, std::vector<std::size_t>> users, consumers;
  for (std::size_t k = 0; k < v.components.size(); ++k) {
    const auto& c = v.components[k];
    for (const auto& [a, b] : c.cascade) succ[k][a].insert(b);
    for (const auto& a : c.inputs) {
      users[a].push_back(k);
      consumers[a].push_back(k);
    }
    for (const auto& a : c.outputs) users[a].push_back(k);
  }
  auto chain = [&](const std::string& from, bool own) {
    std::set<std::string> seen{from};
    std::deque<std::pair<std::string, bool>> work{{from, own}};
    while (!work.empty()) {
      auto [x, first] = work.front();
      work.pop_front();
      const auto& index = first ? users : consumers;
      auto ks = index.find(x);
      if (ks == index.end()) continue;
      for (std::size_t k : ks->second) {
        auto it = succ[k].find(x);
        if (it == succ[k].end()) continue;
        for (const auto& y : it->second) {
          if (seen.insert(y).second) work.emplace_back(y, false);
        }
      }
    }
    return seen;
  };
  for (const auto& [from, info] : alphabet) {
    for (const auto& to : chain(from, true)) v.closure.emplace(from, to);
  }

  // Seeded runs already know what happens inside their own component; only
  // the hand-offs to consumers use the context-free relation.
  std::map<std::string, std::set<std::string>> handoff;
  auto extend = [&](SeedRun& run) {
    for (auto& [c, hit] : run) {
      std::set<std::string> all = hit;
      for (const auto& y : hit) {
        auto it = handoff.find(y);
        if (it == handoff.end()) it = handoff.emplace(y, chain(y, false)).first;
        all.insert(it->second.begin(), it->second.end());
      }
      hit = std::move(all);
    }
  };
  for (auto& sd : seeds) {
    extend(sd.initial);
    for (auto& [e, runs] : sd.timed) {
      for (auto& run : runs) extend(run);
    }
  }

  auto find = [](const SeedRun& run, const std::string& target) -> const std::string* {
    for (const auto& [c, hit] : run) {
      if (hit.count(target)) return &c;
    }
    return nullptr;
  };
  std::set<std::string> timed;
  for (const auto& sd : seeds) {
    for (const auto& [e, runs] : sd.timed) timed.insert(e);
  }
  for (const auto& comp : v.components) {
    for (const auto& [ab, witnesses] : comp.confluence.non_confluent) {
      Counterexample ce{ab, comp.name, witnesses.front(), "", "", false, "", {}};
      const std::string *ci = nullptr, *di = nullptr;
      for (const auto& sd : seeds) {
        if (!ci) ci = find(sd.initial, ab.first);
        if (!di) di = find(sd.initial, ab.second);
      }
      if (ci && di) {
        ce.c = *ci;
        ce.d = *di;
        ce.initial = true;
        v.counterexample = ce;
        break;
      }
      // One spontaneous set per component: c and d taken from the same
      // component must come from the same run.
      for (const auto& e : timed) {
        std::optional<std::pair<std::size_t, std::string>> some_c, some_d;
        for (std::size_t k = 0; k < seeds.size() && !v.counterexample; ++k) {
          auto it = seeds[k].timed.find(e);
          if (it == seeds[k].timed.end()) continue;
          for (const auto& run : it->second) {
            const std::string* cc = find(run, ab.first);
            const std::string* dd = find(run, ab.second);
            if (cc && dd) {
              ce.c = *cc;
              ce.d = *dd;
            } else {
              if (cc && !some_c) some_c.emplace(k, *cc);
              if (dd && !some_d) some_d.emplace(k, *dd);
              if (!some_c || !some_d || some_c->first == some_d->first) continue;
              ce.c = some_c->second;
              ce.d = some_d->second;
            }
            ce.e = e;
            for (const auto& [x, hit] : run) ce.spontaneous_union.insert(x);
            v.counterexample = ce;
            break;
          }
        }
        if (v.counterexample) break;
      }
      if (v.counterexample) break;
    }
    if (v.counterexample) break;
  }
  v.weakly_deterministic = v.closed && !v.counterexample;
  return v;
}

}  // namespace rft
