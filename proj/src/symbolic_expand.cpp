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

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "rft/errors.hpp"
#include "rft/symbolic.hpp"

namespace rft {

int ExpandedModule::slot(std::string_view n) const {
  for (std::size_t i = 0; i < slot_names.size(); ++i) {
    if (slot_names[i] == n) return static_cast<int>(i);
  }
  return -1;
}

Alphabet build_alphabet(const std::vector<SymbolicModule>& modules) {
  Alphabet alphabet;
  for (const auto& m : modules) {
    for (const auto& t : m.transitions) {
      if (t.wildcard()) continue;
      std::string label = t.silent() ? silent_label(m.name) : t.label;
      auto [it, fresh] = alphabet.emplace(label, LabelInfo{is_urgent(t.decoration), "", {}});
      LabelInfo& info = it->second;
      if (!fresh && info.urgent != is_urgent(t.decoration)) {
        throw IncompatibleComponents("label '" + label + "' used with different urgency");
      }
      if (is_output(t.decoration)) {
        if (!info.producer.empty() && info.producer != m.name) {
          throw IncompatibleComponents("label '" + label + "' is output by both '" +
                                       info.producer + "' and '" + m.name + "'");
        }
        info.producer = m.name;
      } else if (info.consumers.empty() || info.consumers.back() != m.name) {
        info.consumers.push_back(m.name);
      }
    }
  }
  for (auto& [label, info] : alphabet) {
    if (!info.producer.empty()) {
      for (const auto& c : info.consumers) {
        if (c == info.producer) {
          throw IncompatibleComponents("module '" + c + "' uses '" + label +
                                       "' both as input and output");
        }
      }
    }
  }
  return alphabet;
}

namespace {

struct Slot {
  int offset = 0;
  int length = 1;
};

using Valuation = std::vector<std::int64_t>;

// Resolves random() calls: each call consumes the next entry of `picks`;
// `arity` records how many options each call had.
struct Chooser {
  std::vector<int> picks;
  std::vector<int> arity;
  std::size_t next = 0;

  int choose(const std::vector<int>& options) {
    if (next == arity.size()) {
      arity.push_back(static_cast<int>(options.size()));
      picks.push_back(0);
    }
    return options[picks[next++]];
  }

  // Odometer step; false once every combination has been produced.
  bool advance() {
    for (std::size_t i = picks.size(); i-- > 0;) {
      if (++picks[i] < arity[i]) {
        picks.resize(i + 1);
        arity.resize(i + 1);
        return true;
      }
    }
    return false;
  }
};

class Evaluator {
 public:
  Evaluator(const SymbolicModule& m, const std::map<std::string, Slot>& slots)
      : module_(m), slots_(slots) {}

  std::int64_t eval(const Expr& e, const Valuation& pre, Valuation* post, Chooser* ch) const {
    switch (e.kind) {
      case ExprKind::kBool:
      case ExprKind::kInt:
        return e.value;
      case ExprKind::kVar:
        return pre[slots_.at(e.name).offset];
      case ExprKind::kIndex: {
        const Slot& s = slots_.at(e.name);
        return pre[s.offset + index(e.name, eval(e.args[0], pre, post, ch))];
      }
      case ExprKind::kUnary: {
        std::int64_t v = eval(e.args[0], pre, post, ch);
        return e.op == Op::kNot ? !v : -v;
      }
      case ExprKind::kBinary:
        return binary(e, pre, post, ch);
      case ExprKind::kCall:
        return call(e, pre, post, ch);
    }
    return 0;
  }

  int index(const std::string& arr, std::int64_t i) const {
    const Slot& s = slots_.at(arr);
    if (i < 0 || i >= s.length) {
      throw EvalError("module '" + module_.name + "': index " + std::to_string(i) +
                      " out of bounds for '" + arr + "'");
    }
    return static_cast<int>(i);
  }

 private:
  const SymbolicModule& module_;
  const std::map<std::string, Slot>& slots_;

  std::int64_t binary(const Expr& e, const Valuation& pre, Valuation* post,
                      Chooser* ch) const {
    std::int64_t l = eval(e.args[0], pre, post, ch);
    if (e.op == Op::kAnd && !l) return 0;
    if (e.op == Op::kOr && l) return 1;
    std::int64_t r = eval(e.args[1], pre, post, ch);
    switch (e.op) {
      case Op::kOr:
      case Op::kAnd:
        return r != 0;
      case Op::kEq:
        return l == r;
      case Op::kNe:
        return l != r;
      case Op::kLt:
        return l < r;
      case Op::kLe:
        return l <= r;
      case Op::kGt:
        return l > r;
      case Op::kGe:
        return l >= r;
      case Op::kAdd:
        return l + r;
      case Op::kSub:
        return l - r;
      case Op::kMul:
        return l * r;
      case Op::kDiv:
        return l / r;
      default:
        return 0;
    }
  }

  std::int64_t call(const Expr& e, const Valuation& pre, Valuation* post, Chooser* ch) const {
    const std::string& arr = e.args[0].name;
    const Slot& s = slots_.at(arr);
    auto at = [&](int i) { return pre[s.offset + i]; };
    if (e.name == "some") {
      for (int i = 0; i < s.length; ++i) {
        if (at(i)) return 1;
      }
      return 0;
    }
    if (e.name == "random") {
      std::vector<int> options;
      for (int i = 0; i < s.length; ++i) {
        if (at(i)) options.push_back(i);
      }
      if (options.empty()) {
        throw EvalError("module '" + module_.name + "': random() over an all-zero array");
      }
      if (!ch) throw EvalError("random() is only allowed in assignments");
      return ch->choose(options);
    }
    std::int64_t x = eval(e.args[1], pre, post, ch);
    if (e.name == "fstexclude") {
      for (int i = 0; i < s.length; ++i) {
        if (at(i) != x) return i;
      }
      return -1;
    }
    if (e.name == "maxfrom") {
      int best = index(arr, x);
      for (int i = best + 1; i < s.length; ++i) {
        if (at(i) > at(best)) best = i;
      }
      return best;
    }
    // broken(arr, i): i becomes the most recent failure (value 1) and the
    // other positive entries keep their order, renumbered 2, 3, ...  On
    // gap-free arrays this is the plain "+1 to every positive entry".
    int i = index(arr, x);
    if (!post) throw EvalError("broken() is only allowed in assignments");
    if (at(i) > 0) return 0;
    std::vector<int> older;
    for (int j = 0; j < s.length; ++j) {
      if (j != i && at(j) > 0) older.push_back(j);
    }
    std::stable_sort(older.begin(), older.end(), [&](int a, int b) { return at(a) < at(b); });
    (*post)[s.offset + i] = 1;
    for (std::size_t k = 0; k < older.size(); ++k) {
      (*post)[s.offset + older[k]] = static_cast<std::int64_t>(k) + 2;
    }
    return 0;
  }
};

std::string format_valuation(const SymbolicModule& m, const std::map<std::string, Slot>& slots,
                             const Valuation& v) {
  std::string out = "{";
  bool first = true;
  auto value = [&](const VarDecl& d, std::int64_t x) {
    if (d.type == VarType::kBool) return std::string(x ? "true" : "false");
    return std::to_string(x);
  };
  for (const auto& d : m.vars) {
    if (!first) out += ",";
    first = false;
    const Slot& s = slots.at(d.name);
    out += d.name + "=";
    if (!d.length) {
      out += value(d, v[s.offset]);
      continue;
    }
    out += "[";
    for (int i = 0; i < s.length; ++i) {
      if (i) out += ",";
      out += value(d, v[s.offset + i]);
    }
    out += "]";
  }
  return out + "}";
}

struct VecHash {
  std::size_t operator()(const Valuation& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL;
    return h;
  }
};

}  // namespace

ExpandedModule expand(const SymbolicModule& m, const Alphabet& alphabet) {
  ExpandedModule out;
  IosaAutomaton& a = out.automaton;
  a.name = m.name;

  std::map<std::string, Slot> slots;
  std::vector<const VarDecl*> slot_decl;
  Valuation init;
  for (const auto& d : m.vars) {
    Slot s{static_cast<int>(init.size()), d.length.value_or(1)};
    slots[d.name] = s;
    for (int i = 0; i < s.length; ++i) {
      out.slot_names.push_back(d.length ? d.name + "[" + std::to_string(i) + "]" : d.name);
      slot_decl.push_back(&d);
      init.push_back(d.init);
    }
  }

  auto laws = m.clock_laws();
  std::map<std::string, int> clock_ids;
  for (const auto& c : m.clocks) {
    auto it = laws.find(c);
    clock_ids[c] = static_cast<int>(a.clocks.size());
    a.clocks.push_back(Clock{m.name + "." + c, it == laws.end() ? Distribution{} : it->second});
    a.initial_clocks.push_back(clock_ids[c]);
  }

  // Action table.
  std::map<std::string, int> action_ids;
  auto add_action = [&](const std::string& label, Direction dir, bool urgent) {
    auto it = action_ids.find(label);
    if (it != action_ids.end()) {
      const Action& prev = a.actions[it->second];
      if (prev.direction != dir || prev.urgent != urgent) {
        throw UnknownLabel("module '" + m.name + "' uses '" + label + "' inconsistently");
      }
      return it->second;
    }
    int id = static_cast<int>(a.actions.size());
    a.actions.push_back(Action{label, dir, urgent});
    action_ids[label] = id;
    return id;
  };
  std::set<std::string> own_outputs;
  for (const auto& t : m.transitions) {
    if (is_output(t.decoration)) own_outputs.insert(t.silent() ? silent_label(m.name) : t.label);
  }
  std::vector<std::vector<int>> labels_of(m.transitions.size());
  for (std::size_t ti = 0; ti < m.transitions.size(); ++ti) {
    const auto& t = m.transitions[ti];
    if (t.wildcard()) {
      for (const auto& [label, info] : alphabet) {
        if (info.urgent || info.producer.empty() || info.producer == m.name ||
            own_outputs.count(label)) {
          continue;
        }
        labels_of[ti].push_back(add_action(label, Direction::kInput, false));
      }
      continue;
    }
    std::string label = t.silent() ? silent_label(m.name) : t.label;
    auto it = alphabet.find(label);
    if (it == alphabet.end()) {
      throw UnknownLabel("label '" + label + "' of module '" + m.name +
                         "' is not in the alphabet");
    }
    if (it->second.urgent != is_urgent(t.decoration) ||
        (is_output(t.decoration) && it->second.producer != m.name)) {
      throw UnknownLabel("label '" + label + "' of module '" + m.name +
                         "' disagrees with the alphabet");
    }
    labels_of[ti].push_back(add_action(
        label, is_output(t.decoration) ? Direction::kOutput : Direction::kInput,
        is_urgent(t.decoration)));
  }

  Evaluator ev(m, slots);
  std::unordered_map<Valuation, int, VecHash> ids;
  std::deque<int> work;
  auto intern = [&](const Valuation& v) {
    auto [it, fresh] = ids.emplace(v, static_cast<int>(out.valuations.size()));
    if (fresh) {
      out.valuations.push_back(v);
      a.state_names.push_back(format_valuation(m, slots, v));
      work.push_back(it->second);
    }
    return it->second;
  };
  a.initial_state = intern(init);

  int next_branch = 0;
  std::vector<char> covered(a.actions.size());
  while (!work.empty()) {
    int sid = work.front();
    work.pop_front();
    const Valuation pre = out.valuations[sid];
    std::fill(covered.begin(), covered.end(), 0);
    for (std::size_t ti = 0; ti < m.transitions.size(); ++ti) {
      const auto& t = m.transitions[ti];
      if (!ev.eval(t.guard, pre, nullptr, nullptr)) continue;
      ClockSet guard, resets;
      if (t.clock) guard.push_back(clock_ids.at(*t.clock));
      for (const auto& r : t.resets) resets.push_back(clock_ids.at(r.clock));
      std::sort(resets.begin(), resets.end());

      std::vector<std::pair<Valuation, double>> outcomes;
      Chooser ch;
      do {
        ch.next = 0;
        Valuation post = pre;
        std::vector<std::pair<int, std::int64_t>> writes;
        for (const auto& as : t.assignments) {
          const Slot& s = slots.at(as.target);
          int off = s.offset;
          if (as.index) off += ev.index(as.target, ev.eval(*as.index, pre, &post, &ch));
          writes.emplace_back(off, ev.eval(as.value, pre, &post, &ch));
        }
        for (auto [off, val] : writes) post[off] = val;
        for (std::size_t k = 0; k < post.size(); ++k) {
          const VarDecl& d = *slot_decl[k];
          if (post[k] < d.lo || post[k] > d.hi) {
            throw RangeOverflow("module '" + m.name + "': transition [" +
                                (t.silent() ? std::string() : t.label) + "] from " +
                                a.state_names[sid] + " sets " + out.slot_names[k] + " to " +
                                std::to_string(post[k]) + ", outside [" +
                                std::to_string(d.lo) + ".." + std::to_string(d.hi) + "]");
          }
        }
        double p = 1.0;
        for (int n : ch.arity) p /= n;
        outcomes.emplace_back(std::move(post), p);
      } while (ch.advance());

      for (int action : labels_of[ti]) {
        covered[action] = 1;
        int branch = outcomes.size() > 1 ? next_branch++ : -1;
        for (const auto& [post, p] : outcomes) {
          int tgt = intern(post);
          a.transitions.push_back(Transition{sid, guard, action, resets, tgt, p, branch});
        }
      }
    }
    for (std::size_t ai = 0; ai < a.actions.size(); ++ai) {
      if (!covered[ai] && !a.actions[ai].is_output()) {
        a.transitions.push_back(Transition{sid, {}, static_cast<int>(ai), {}, sid, 1.0, -1});
      }
    }
  }
  return out;
}

}  // namespace rft
