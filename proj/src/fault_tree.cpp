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

#include "rft/fault_tree.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rft/errors.hpp"

namespace rft {

std::string_view kind_name(ElementKind kind) {
  switch (kind) {
    case ElementKind::kBe: return "be";
    case ElementKind::kSbe: return "sbe";
    case ElementKind::kAnd: return "and";
    case ElementKind::kOr: return "or";
    case ElementKind::kPand: return "pand";
    case ElementKind::kVot: return "vot";
    case ElementKind::kFdep: return "fdep";
    case ElementKind::kSg: return "sg";
    case ElementKind::kRbox: return "rbox";
  }
  return "?";
}

std::string_view policy_name(RepairPolicy policy) {
  switch (policy) {
    case RepairPolicy::kPriority: return "prio";
    case RepairPolicy::kFcfs: return "fcfs";
    case RepairPolicy::kRandom: return "random";
  }
  return "?";
}

std::string_view rule_name(Rule rule) {
  switch (rule) {
    case Rule::kArity: return "Arity";
    case Rule::kAcyclicity: return "Acyclicity";
    case Rule::kTopKind: return "TopKind";
    case Rule::kUniqueTop: return "UniqueTop";
    case Rule::kRepeatedInput: return "RepeatedInput";
    case Rule::kDummyOutput: return "DummyOutput";
    case Rule::kRboxInputKind: return "RboxInputKind";
    case Rule::kSingleRbox: return "SingleRbox";
    case Rule::kMissingRbox: return "MissingRbox";
    case Rule::kSpareGateInputs: return "SpareGateInputs";
    case Rule::kSbeParentKind: return "SbeParentKind";
    case Rule::kSpareUsers: return "SpareUsers";
    case Rule::kSingleSpareGate: return "SingleSpareGate";
    case Rule::kSpareFdepConflict: return "SpareFdepConflict";
  }
  return "?";
}

const Vertex* FaultTreeDef::find(std::string_view name) const {
  for (const auto& v : vertices) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

Vertex* FaultTreeDef::find(std::string_view name) {
  for (auto& v : vertices) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

std::vector<const Vertex*> FaultTreeDef::parents(std::string_view name) const {
  std::vector<const Vertex*> out;
  for (const auto& v : vertices) {
    if (std::find(v.inputs.begin(), v.inputs.end(), name) != v.inputs.end()) {
      out.push_back(&v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { kIdent, kNumber, kPunct, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> lex_rft(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    std::size_t l = line, cc = col, start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      advance(j - i);
      out.push_back({Tok::kIdent, std::string(text.substr(start, j - start)), l, cc});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      std::size_t j = i;
      if (text[j] == '-' || text[j] == '+') ++j;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '.' ||
              ((text[j] == '-' || text[j] == '+') &&
               (text[j - 1] == 'e' || text[j - 1] == 'E')))) {
        ++j;
      }
      advance(j - i);
      out.push_back({Tok::kNumber, std::string(text.substr(start, j - start)), l, cc});
      continue;
    }
    if (c == '(' || c == ')' || c == ',' || c == '=' || c == ';') {
      advance(1);
      out.push_back({Tok::kPunct, std::string(1, c), l, cc});
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", l, cc);
  }
  out.push_back({Tok::kEnd, "", line, col});
  return out;
}

double to_number(const Token& t) {
  double value = 0.0;
  auto res = std::from_chars(t.text.data() + (t.text[0] == '+' ? 1 : 0),
                             t.text.data() + t.text.size(), value);
  if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size()) {
    throw ParseError("malformed number '" + t.text + "'", t.line, t.column, {"number"});
  }
  return value;
}

class RftParser {
 public:
  explicit RftParser(std::string_view text) : toks_(lex_rft(text)) {}

  FaultTreeDef parse() {
    FaultTreeDef tree;
    std::optional<Token> top_tok;
    while (peek().kind != Tok::kEnd) {
      const Token& head = expect_ident("vertex name or 'toplevel'");
      if (head.text == "toplevel" && peek().kind == Tok::kIdent && peek(1).text == ";") {
        if (top_tok) {
          throw ParseError("duplicate toplevel declaration", head.line, head.column);
        }
        top_tok = next();
        expect_punct(";");
        continue;
      }
      if (tree.find(head.text) != nullptr) {
        throw ParseError("duplicate vertex name '" + head.text + "'", head.line,
                         head.column);
      }
      tree.vertices.push_back(parse_vertex(head));
    }
    if (!top_tok) {
      const Token& end = peek();
      throw ParseError("missing 'toplevel NAME;' declaration", end.line, end.column,
                       {"toplevel"});
    }
    tree.top = top_tok->text;
    for (const Token& ref : refs_) {
      if (tree.find(ref.text) == nullptr) {
        throw ParseError("reference to undeclared vertex '" + ref.text + "'", ref.line,
                         ref.column);
      }
    }
    if (tree.find(tree.top) == nullptr) {
      throw ParseError("toplevel names undeclared vertex '" + tree.top + "'",
                       top_tok->line, top_tok->column);
    }
    for (const auto& v : tree.vertices) {
      if (v.label.kind != ElementKind::kSg) continue;
      for (std::size_t j = 1; j < v.inputs.size(); ++j) {
        const Vertex* spare = tree.find(v.inputs[j]);
        if (spare->label.kind == ElementKind::kSbe) {
          tree.spare_users[spare->name].push_back(v.name);
        }
      }
    }
    return tree;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Token& at, const std::string& what,
                         std::vector<std::string> expected) const {
    std::string found = at.kind == Tok::kEnd ? "end of input" : "'" + at.text + "'";
    throw ParseError("expected " + what + ", found " + found, at.line, at.column,
                     std::move(expected));
  }

  const Token& expect_ident(const std::string& what) {
    if (peek().kind != Tok::kIdent) fail(peek(), what, {"identifier"});
    return next();
  }

  void expect_punct(const std::string& p) {
    if (peek().kind != Tok::kPunct || peek().text != p) fail(peek(), "'" + p + "'", {p});
    next();
  }

  std::vector<std::string> parse_refs(std::size_t min_count) {
    std::vector<std::string> out;
    while (peek().kind == Tok::kIdent) {
      refs_.push_back(peek());
      out.push_back(next().text);
    }
    if (out.size() < min_count) {
      fail(peek(), std::to_string(min_count) + " or more input names", {"identifier"});
    }
    expect_punct(";");
    return out;
  }

  Distribution parse_distribution() {
    const Token& fam = expect_ident("distribution family");
    expect_punct("(");
    std::vector<double> params;
    std::vector<Token> param_toks;
    while (true) {
      if (peek().kind != Tok::kNumber) fail(peek(), "numeric parameter", {"number"});
      param_toks.push_back(peek());
      params.push_back(to_number(next()));
      if (peek().kind == Tok::kPunct && peek().text == ",") {
        next();
        continue;
      }
      break;
    }
    expect_punct(")");
    try {
      return Distribution::make(fam.text, params.data(), params.size());
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), fam.line, fam.column,
                       {"exponential", "uniform", "weibull", "lognormal", "erlang"});
    }
  }

  Vertex parse_vertex(const Token& name) {
    Vertex v;
    v.name = name.text;
    const Token& kind = expect_ident("element kind");
    const std::string& k = kind.text;
    if (k == "be" || k == "sbe") {
      bool spare = k == "sbe";
      v.label.kind = spare ? ElementKind::kSbe : ElementKind::kBe;
      std::vector<std::string> wanted = spare
          ? std::vector<std::string>{"fail", "dormant", "repair"}
          : std::vector<std::string>{"fail", "repair"};
      std::set<std::string> seen;
      while (peek().kind == Tok::kIdent) {
        const Token& attr = next();
        if (std::find(wanted.begin(), wanted.end(), attr.text) == wanted.end()) {
          fail(attr, "distribution attribute", wanted);
        }
        if (!seen.insert(attr.text).second) {
          throw ParseError("duplicate attribute '" + attr.text + "'", attr.line,
                           attr.column);
        }
        expect_punct("=");
        Distribution d = parse_distribution();
        if (attr.text == "fail") v.label.active_fail = d;
        if (attr.text == "dormant") v.label.dormant_fail = d;
        if (attr.text == "repair") v.label.repair = d;
      }
      for (const auto& w : wanted) {
        if (!seen.count(w)) fail(peek(), "attribute '" + w + "='", {w});
      }
      expect_punct(";");
    } else if (k == "and" || k == "or" || k == "pand") {
      v.label.kind = k == "and" ? ElementKind::kAnd
                   : k == "or"  ? ElementKind::kOr
                                : ElementKind::kPand;
      v.inputs = parse_refs(1);
    } else if (k == "vot") {
      v.label.kind = ElementKind::kVot;
      if (peek().kind != Tok::kNumber) fail(peek(), "voting threshold", {"number"});
      const Token& kt = next();
      double kv = to_number(kt);
      if (kv != static_cast<int>(kv) || kv < 1) {
        throw ParseError("voting threshold must be a positive integer", kt.line,
                         kt.column);
      }
      v.label.k = static_cast<int>(kv);
      v.inputs = parse_refs(1);
    } else if (k == "fdep") {
      v.label.kind = ElementKind::kFdep;
      v.inputs = parse_refs(2);
    } else if (k == "sg") {
      v.label.kind = ElementKind::kSg;
      v.inputs = parse_refs(2);
    } else if (k == "rbox") {
      v.label.kind = ElementKind::kRbox;
      const Token& pol = expect_ident("repair policy");
      if (pol.text == "prio") {
        v.label.policy = RepairPolicy::kPriority;
      } else if (pol.text == "fcfs") {
        v.label.policy = RepairPolicy::kFcfs;
      } else if (pol.text == "random") {
        v.label.policy = RepairPolicy::kRandom;
      } else {
        fail(pol, "repair policy", {"prio", "fcfs", "random"});
      }
      v.inputs = parse_refs(1);
    } else {
      fail(kind, "element kind",
           {"be", "sbe", "and", "or", "pand", "vot", "fdep", "sg", "rbox"});
    }
    return v;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Token> refs_;
};

}  // namespace

FaultTreeDef parse_rft(std::string_view text) { return RftParser(text).parse(); }

std::string print_rft(const FaultTreeDef& tree) {
  std::ostringstream os;
  os << "toplevel " << tree.top << ";\n";
  for (const auto& v : tree.vertices) {
    os << v.name << ' ' << kind_name(v.label.kind);
    switch (v.label.kind) {
      case ElementKind::kBe:
        os << " fail=" << v.label.active_fail->to_string()
           << " repair=" << v.label.repair->to_string();
        break;
      case ElementKind::kSbe:
        os << " fail=" << v.label.active_fail->to_string()
           << " dormant=" << v.label.dormant_fail->to_string()
           << " repair=" << v.label.repair->to_string();
        break;
      case ElementKind::kVot:
        os << ' ' << v.label.k;
        break;
      case ElementKind::kRbox:
        os << ' ' << policy_name(v.label.policy);
        break;
      default:
        break;
    }
    for (const auto& in : v.inputs) os << ' ' << in;
    os << ";\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::vector<std::string> find_cycle(const FaultTreeDef& tree) {
  // Edges run input -> gate.  DFS with colours; returns the first cycle found.
  std::map<std::string, int> colour;
  std::vector<std::string> stack;
  std::vector<std::string> cycle;
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& w : tree.vertices) {
    for (const auto& v : w.inputs) succ[v].push_back(w.name);
  }
  std::function<bool(const std::string&)> dfs = [&](const std::string& v) {
    colour[v] = 1;
    stack.push_back(v);
    for (const auto& w : succ[v]) {
      if (colour[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        cycle.assign(it, stack.end());
        return true;
      }
      if (colour[w] == 0 && dfs(w)) return true;
    }
    stack.pop_back();
    colour[v] = 2;
    return false;
  };
  for (const auto& v : tree.vertices) {
    if (colour[v.name] == 0 && dfs(v.name)) break;
  }
  return cycle;
}

bool has_kind(const FaultTreeDef& tree, const std::string& name, ElementKind kind) {
  const Vertex* v = tree.find(name);
  return v != nullptr && v->label.kind == kind;
}

}  // namespace

std::vector<Violation> validate_rft(const FaultTreeDef& tree) {
  std::vector<Violation> out;
  auto add = [&](Rule r, std::vector<std::string> vs, std::string msg) {
    out.push_back({r, std::move(vs), std::move(msg)});
  };

  for (const auto& v : tree.vertices) {
    const auto n = static_cast<int>(v.inputs.size());
    const auto& l = v.label;
    bool basic = is_basic(l.kind);
    if (basic && n != 0) add(Rule::kArity, {v.name}, "basic elements take no inputs");
    if (l.kind == ElementKind::kBe &&
        (!l.active_fail || !l.repair || l.dormant_fail)) {
      add(Rule::kArity, {v.name}, "BE carries exactly fail and repair laws");
    }
    if (l.kind == ElementKind::kSbe && (!l.active_fail || !l.repair || !l.dormant_fail)) {
      add(Rule::kArity, {v.name}, "SBE carries exactly fail, dormant and repair laws");
    }
    if (!basic && (l.active_fail || l.dormant_fail || l.repair)) {
      add(Rule::kArity, {v.name}, "gates carry no distributions");
    }
    if (l.kind == ElementKind::kVot && (l.k < 1 || l.k > n)) {
      add(Rule::kArity, {v.name}, "voting threshold must satisfy 1 <= k <= arity");
    }
    if ((l.kind == ElementKind::kPand || l.kind == ElementKind::kFdep) && n < 2) {
      add(Rule::kArity, {v.name}, std::string(kind_name(l.kind)) + " needs >= 2 inputs");
    }
    if (!basic && l.kind != ElementKind::kPand && l.kind != ElementKind::kFdep && n < 1) {
      add(Rule::kArity, {v.name}, std::string(kind_name(l.kind)) + " needs >= 1 input");
    }
    for (const auto& in : v.inputs) {
      if (tree.find(in) == nullptr) {
        add(Rule::kArity, {v.name, in}, "input '" + in + "' is not a vertex");
      }
    }
  }

  if (auto cycle = find_cycle(tree); !cycle.empty()) {
    add(Rule::kAcyclicity, cycle, "inputs form a cycle");
  }

  // Roots: vertices whose (non-dummy) output reaches no gate.  Edges into a
  // repair box are repair links, not failure propagation.
  std::vector<std::string> roots;
  for (const auto& v : tree.vertices) {
    if (v.label.kind == ElementKind::kFdep || v.label.kind == ElementKind::kRbox) continue;
    bool feeds = false;
    for (const Vertex* p : tree.parents(v.name)) {
      if (p->label.kind != ElementKind::kRbox) feeds = true;
    }
    if (!feeds) roots.push_back(v.name);
  }
  const Vertex* top = tree.find(tree.top);
  if (top == nullptr) {
    add(Rule::kUniqueTop, {tree.top}, "top element is not declared");
  } else {
    if (top->label.kind == ElementKind::kFdep || top->label.kind == ElementKind::kRbox) {
      add(Rule::kTopKind, {top->name}, "top element cannot be an FDEP or RBOX");
    } else if (std::find(roots.begin(), roots.end(), top->name) == roots.end()) {
      add(Rule::kUniqueTop, {top->name}, "top element feeds another gate");
    }
    std::vector<std::string> extra;
    for (const auto& r : roots) {
      if (r != top->name && !is_basic(tree.find(r)->label.kind)) extra.push_back(r);
    }
    if (!extra.empty()) {
      extra.insert(extra.begin(), top->name);
      add(Rule::kUniqueTop, extra, "more than one gate output is left unconnected");
    }
  }

  for (const auto& w : tree.vertices) {
    std::set<std::string> seen;
    for (const auto& in : w.inputs) {
      if (!seen.insert(in).second) {
        add(Rule::kRepeatedInput, {w.name, in}, "'" + in + "' appears twice among inputs");
      }
    }
    for (const auto& in : w.inputs) {
      const Vertex* v = tree.find(in);
      if (v == nullptr) continue;
      if (v->label.kind == ElementKind::kFdep || v->label.kind == ElementKind::kRbox) {
        add(Rule::kDummyOutput, {v->name, w.name}, "FDEP/RBOX outputs are dummy");
      }
      if (w.label.kind == ElementKind::kRbox && !is_basic(v->label.kind)) {
        add(Rule::kRboxInputKind, {v->name, w.name}, "repair boxes only take BE/SBE inputs");
      }
      if (v->label.kind == ElementKind::kSbe && w.label.kind != ElementKind::kSg &&
          w.label.kind != ElementKind::kRbox) {
        add(Rule::kSbeParentKind, {v->name, w.name},
            "an SBE can only feed spare gates and repair boxes");
      }
    }
    if (w.label.kind == ElementKind::kSg && !w.inputs.empty()) {
      if (!has_kind(tree, w.inputs[0], ElementKind::kBe)) {
        add(Rule::kSpareGateInputs, {w.name, w.inputs[0]}, "spare gate main input must be a BE");
      }
      for (std::size_t j = 1; j < w.inputs.size(); ++j) {
        if (!has_kind(tree, w.inputs[j], ElementKind::kSbe)) {
          add(Rule::kSpareGateInputs, {w.name, w.inputs[j]},
              "spare gate spare inputs must be SBEs");
        }
      }
    }
  }

  for (const auto& v : tree.vertices) {
    if (!is_basic(v.label.kind)) continue;
    std::vector<std::string> rboxes, sgs;
    bool in_fdep = false;
    for (const Vertex* p : tree.parents(v.name)) {
      if (p->label.kind == ElementKind::kRbox) rboxes.push_back(p->name);
      if (p->label.kind == ElementKind::kSg) sgs.push_back(p->name);
      if (p->label.kind == ElementKind::kFdep) in_fdep = true;
    }
    if (rboxes.size() > 1) {
      rboxes.insert(rboxes.begin(), v.name);
      add(Rule::kSingleRbox, rboxes, "element is connected to more than one RBOX");
    } else if (rboxes.empty()) {
      add(Rule::kMissingRbox, {v.name}, "element is not managed by any RBOX");
    }
    if (v.label.kind == ElementKind::kBe) {
      if (sgs.size() > 1) {
        sgs.insert(sgs.begin(), v.name);
        add(Rule::kSingleSpareGate, sgs, "BE is connected to more than one spare gate");
      }
      if (!sgs.empty() && in_fdep) {
        add(Rule::kSpareFdepConflict, {v.name},
            "BE connected to a spare gate cannot feed an FDEP");
      }
    }
  }

  // si(v') lists exactly the spare gates having v' as an input.
  for (const auto& [sbe, users] : tree.spare_users) {
    if (!has_kind(tree, sbe, ElementKind::kSbe)) {
      add(Rule::kSpareUsers, {sbe}, "spare users recorded for a non-SBE vertex");
      continue;
    }
    std::set<std::string> seen;
    for (const auto& g : users) {
      const Vertex* gate = tree.find(g);
      if (!seen.insert(g).second) {
        add(Rule::kSpareUsers, {sbe, g}, "spare gate listed twice in spare users");
      }
      if (gate == nullptr || gate->label.kind != ElementKind::kSg ||
          std::find(gate->inputs.begin() + 1, gate->inputs.end(), sbe) ==
              gate->inputs.end()) {
        add(Rule::kSpareUsers, {sbe, g}, "spare user does not take the SBE as a spare input");
      }
    }
  }
  for (const auto& w : tree.vertices) {
    if (w.label.kind != ElementKind::kSg) continue;
    for (std::size_t j = 1; j < w.inputs.size(); ++j) {
      if (!has_kind(tree, w.inputs[j], ElementKind::kSbe)) continue;
      auto it = tree.spare_users.find(w.inputs[j]);
      if (it == tree.spare_users.end() ||
          std::find(it->second.begin(), it->second.end(), w.name) == it->second.end()) {
        add(Rule::kSpareUsers, {w.inputs[j], w.name},
            "spare gate missing from the SBE's spare users");
      }
    }
  }
  return out;
}

std::vector<std::string> dangling_leaves(const FaultTreeDef& tree) {
  std::vector<std::string> out;
  for (const auto& v : tree.vertices) {
    if (!is_basic(v.label.kind) || v.name == tree.top) continue;
    bool feeds = false;
    for (const Vertex* p : tree.parents(v.name)) {
      if (p->label.kind != ElementKind::kRbox) feeds = true;
    }
    if (!feeds) out.push_back(v.name);
  }
  return out;
}

FaultTreeDef rewrite_fdep(const FaultTreeDef& tree) {
  FaultTreeDef out = tree;
  auto fresh = [&](const std::string& base) {
    std::string name = base;
    for (int n = 2; out.find(name) != nullptr; ++n) name = base + "_" + std::to_string(n);
    return name;
  };
  while (true) {
    auto fdep = std::find_if(out.vertices.begin(), out.vertices.end(), [](const Vertex& v) {
      return v.label.kind == ElementKind::kFdep;
    });
    if (fdep == out.vertices.end()) break;
    Vertex gate = *fdep;
    out.vertices.erase(fdep);
    const std::string& trigger = gate.inputs.front();
    for (std::size_t j = 1; j < gate.inputs.size(); ++j) {
      const std::string& dep = gate.inputs[j];
      std::vector<std::string> users;
      for (const auto& w : out.vertices) {
        if (w.label.kind == ElementKind::kFdep || w.label.kind == ElementKind::kRbox) continue;
        if (std::find(w.inputs.begin(), w.inputs.end(), dep) != w.inputs.end()) {
          users.push_back(w.name);
        }
      }
      if (users.empty()) continue;
      Vertex wrap;
      wrap.name = fresh(gate.name + "_" + dep);
      wrap.label.kind = ElementKind::kOr;
      wrap.inputs = {trigger, dep};
      for (const auto& u : users) {
        for (auto& in : out.find(u)->inputs) {
          if (in == dep) in = wrap.name;
        }
      }
      out.vertices.push_back(std::move(wrap));
    }
  }
  return out;
}

}  // namespace rft
