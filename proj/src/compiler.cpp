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

#include "rft/compiler.hpp"

#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "rft/errors.hpp"

namespace rft {

const VertexWiring& WiringPlan::at(std::string_view vertex) const {
  for (const auto& w : vertices) {
    if (w.vertex == vertex) return w;
  }
  throw std::out_of_range("no wiring for vertex '" + std::string(vertex) + "'");
}

const SparePair& WiringPlan::pair(std::string_view gate, std::string_view spare) const {
  for (const auto& p : pairs) {
    if (p.gate == gate && p.spare == spare) return p;
  }
  throw std::out_of_range("no spare pair (" + std::string(gate) + "," + std::string(spare) +
                          ")");
}

namespace {

std::string pand_inner(const std::string& gate, std::size_t j) {
  return fmt::format("{}_pand{}", gate, j);
}

class NameBook {
 public:
  void claim(const std::string& name, const char* what) {
    if (!names_.insert(name).second) {
      throw IncompatibleComponents(fmt::format("generated {} name '{}' collides", what, name));
    }
  }

 private:
  std::set<std::string> names_;
};

}  // namespace

WiringPlan make_wiring(const FaultTreeDef& tree) {
  WiringPlan plan;
  NameBook actions, modules;
  modules.claim(std::string(kMonitorModule), "module");
  for (const auto& v : tree.vertices) {
    VertexWiring w;
    w.vertex = v.name;
    w.kind = v.label.kind;
    auto add = [&](const char* role) {
      std::string a = fmt::format("{}_{}", role, v.name);
      actions.claim(a, "action");
      w.actions[role] = a;
    };
    switch (v.label.kind) {
      case ElementKind::kSbe:
        add("e");
        add("d");
        [[fallthrough]];
      case ElementKind::kBe:
        add("fl");
        add("up");
        add("f");
        add("u");
        add("r");
        break;
      case ElementKind::kFdep:
      case ElementKind::kRbox:
        break;
      default:
        add("f");
        add("u");
        break;
    }
    w.modules.push_back(v.name);
    if (v.label.kind == ElementKind::kSbe) w.modules.push_back(v.name + "_mux");
    if (v.label.kind == ElementKind::kPand) {
      for (std::size_t j = 1; j + 1 < v.inputs.size(); ++j) {
        std::string inner = pand_inner(v.name, j);
        w.modules.push_back(inner);
        for (const char* role : {"f", "u"}) {
          std::string a = fmt::format("{}_{}", role, inner);
          actions.claim(a, "action");
        }
      }
    }
    for (const auto& m : w.modules) modules.claim(m, "module");
    plan.vertices.push_back(std::move(w));
  }
  for (const auto& v : tree.vertices) {
    if (v.label.kind != ElementKind::kSg) continue;
    for (std::size_t i = 1; i < v.inputs.size(); ++i) {
      const std::string& g = v.name;
      const std::string& s = v.inputs[i];
      SparePair p{g,
                  s,
                  fmt::format("rq_{}_{}", g, s),
                  fmt::format("asg_{}_{}", s, g),
                  fmt::format("acc_{}_{}", g, s),
                  fmt::format("rj_{}_{}", s, g),
                  fmt::format("rel_{}_{}", g, s)};
      for (const auto* a : {&p.rq, &p.asg, &p.acc, &p.rj, &p.rel}) actions.claim(*a, "action");
      plan.pairs.push_back(std::move(p));
    }
  }
  plan.top = tree.top;
  const auto& top = plan.at(tree.top);
  plan.top_fail = top.action("f");
  plan.top_up = top.action("u");
  return plan;
}

namespace {

// Text builders for each template.  Every template is produced as source
// text and parsed back, so compiled modules are exactly what a user could
// have written by hand.

std::string be_text(const std::string& name, const VertexWiring& w, const ElementLabel& l) {
  return fmt::format(
      "module {name}\n"
      "  fc, rc : clock;\n"
      "  inform : [0..2] init 0;\n"
      "  broken : [0..2] init 0;\n"
      "  [{fl}!] broken = 0 @ fc -> (inform'=1) & (broken'=1);\n"
      "  [{r}??] broken = 1 -> (broken'=2) & (rc'={rep});\n"
      "  [{up}!] broken = 2 @ rc -> (inform'=2) & (broken'=0) & (fc'={fail});\n"
      "  [{f}!!] inform = 1 -> (inform'=0);\n"
      "  [{u}!!] inform = 2 -> (inform'=0);\n"
      "endmodule\n",
      fmt::arg("name", name), fmt::arg("fl", w.action("fl")), fmt::arg("up", w.action("up")),
      fmt::arg("f", w.action("f")), fmt::arg("u", w.action("u")), fmt::arg("r", w.action("r")),
      fmt::arg("fail", l.active_fail->to_string()), fmt::arg("rep", l.repair->to_string()));
}

std::string sbe_text(const std::string& name, const VertexWiring& w, const ElementLabel& l) {
  return fmt::format(
      "module {name}\n"
      "  fc, dfc, rc : clock;\n"
      "  inform : [0..2] init 0;\n"
      "  active : bool init false;\n"
      "  broken : [0..2] init 0;\n"
      "  [{e}??] !active -> (active'=true) & (fc'={mu});\n"
      "  [{d}??] active -> (active'=false) & (dfc'={nu});\n"
      "  [{fl}!] active & broken = 0 @ fc -> (inform'=1) & (broken'=1);\n"
      "  [{fl}!] !active & broken = 0 @ dfc -> (inform'=1) & (broken'=1);\n"
      "  [{r}??] true -> (broken'=2) & (rc'={gamma});\n"
      "  [{up}!] active & broken = 2 @ rc -> (inform'=2) & (broken'=0) & (fc'={mu});\n"
      "  [{up}!] !active & broken = 2 @ rc -> (inform'=2) & (broken'=0) & (dfc'={nu});\n"
      "  [{f}!!] inform = 1 -> (inform'=0);\n"
      "  [{u}!!] inform = 2 -> (inform'=0);\n"
      "endmodule\n",
      fmt::arg("name", name), fmt::arg("e", w.action("e")), fmt::arg("d", w.action("d")),
      fmt::arg("fl", w.action("fl")), fmt::arg("up", w.action("up")),
      fmt::arg("f", w.action("f")), fmt::arg("u", w.action("u")), fmt::arg("r", w.action("r")),
      fmt::arg("mu", l.active_fail->to_string()), fmt::arg("nu", l.dormant_fail->to_string()),
      fmt::arg("gamma", l.repair->to_string()));
}

// Multiplexer of an SBE shared by `pairs` (priority = list order).  asg waits
// for a pending e/d to go out; otherwise the next acc overwrites a pending d
// and the SBE clock resampling depends on the interleaving.
std::string mux_text(const std::string& name, const VertexWiring& w,
                     const std::vector<const SparePair*>& pairs) {
  const std::size_t n = pairs.size();
  std::string out = fmt::format(
      "module {}\n"
      "  queue[{}] : [0..3] init 0;\n"
      "  avail : bool init true;\n"
      "  broken : bool init false;\n"
      "  enable : [0..2] init 0;\n"
      "  [{}?] true -> (broken'=true);\n"
      "  [{}?] true -> (broken'=false);\n"
      "  [{}!!] enable = 1 -> (enable'=0);\n"
      "  [{}!!] enable = 2 -> (enable'=0);\n",
      name, n, w.action("fl"), w.action("up"), w.action("e"), w.action("d"));
  for (std::size_t i = 0; i < n; ++i) {
    const SparePair& p = *pairs[i];
    std::string lower;
    for (std::size_t k = 0; k < i; ++k) lower += fmt::format(" & queue[{}] = 0", k);
    out += fmt::format(
        "  [{rq}??] queue[{i}] = 0 & (broken | !avail) -> (queue[{i}]'=2);\n"
        "  [{rq}??] queue[{i}] = 0 & !broken & avail -> (queue[{i}]'=1);\n"
        "  [{asg}!!] queue[{i}] = 1{lower} & !broken & avail & enable = 0 -> (queue[{i}]'=3) & "
        "(avail'=false);\n"
        "  [{rj}!!] queue[{i}] = 2 -> (queue[{i}]'=1);\n"
        "  [{rel}??] queue[{i}] = 3 -> (queue[{i}]'=0) & (avail'=true) & (enable'=2);\n"
        "  [{acc}??] true -> (enable'=1);\n",
        fmt::arg("rq", p.rq), fmt::arg("asg", p.asg), fmt::arg("rj", p.rj),
        fmt::arg("rel", p.rel), fmt::arg("acc", p.acc), fmt::arg("i", i),
        fmt::arg("lower", lower));
  }
  return out + "endmodule\n";
}

std::string sg_text(const std::string& name, const VertexWiring& w, const FaultTreeDef& tree,
                    const WiringPlan& plan, const Vertex& v) {
  const std::size_t n = v.inputs.size() - 1;
  const VertexWiring& main = plan.at(v.inputs[0]);
  std::string out = fmt::format(
      "module {name}\n"
      "  state : [0..4] init 0;\n"
      "  inform : [0..2] init 0;\n"
      "  release : [-{n}..{n}] init 0;\n"
      "  idx : [1..{n}] init 1;\n"
      "  [{fl}?] state = 0 -> (state'=1) & (idx'=1);\n"
      "  [{up}?] state = 4 -> (state'=0) & (inform'=2);\n",
      fmt::arg("name", name), fmt::arg("n", n), fmt::arg("fl", main.action("fl")),
      fmt::arg("up", main.action("up")));
  for (std::size_t i = 1; i <= n; ++i) {
    out += fmt::format(
        "  [{up}?] state = 3 & idx = {i} -> (state'=0) & (idx'=1) & (release'={i});\n",
        fmt::arg("up", main.action("up")), fmt::arg("i", i));
  }
  for (std::size_t i = 1; i <= n; ++i) {
    const SparePair& p = plan.pair(v.name, v.inputs[i]);
    const VertexWiring& s = plan.at(v.inputs[i]);
    std::string rj_effect = i < n ? fmt::format("(idx'={}) & (state'=1)", i + 1)
                                  : std::string("(state'=4) & (idx'=1) & (inform'=1)");
    out += fmt::format(
        "  [{fl}?] state = 3 & idx = {i} -> (release'={i});\n"
        "  [{rq}!!] state = 1 & idx = {i} -> (state'=2);\n"
        "  [{asg}??] state = 0 | state = 1 | state = 3 -> (release'={i});\n"
        "  [{asg}??] state = 2 & idx = {i} -> (release'=-{i}) & (state'=3);\n"
        "  [{asg}??] state = 4 -> (release'=-{i}) & (state'=3) & (idx'={i}) & (inform'=2);\n"
        "  [{rj}??] state = 2 & idx = {i} -> {rj_effect};\n"
        "  [{rel}!!] release = {i} & !(state = 3 & idx = {i}) -> (release'=0);\n"
        "  [{rel}!!] release = {i} & state = 3 & idx = {i} -> (release'=0) & (state'=1) & "
        "(idx'=1);\n"
        "  [{acc}!!] release = -{i} -> (release'=0);\n",
        fmt::arg("fl", s.action("fl")), fmt::arg("rq", p.rq), fmt::arg("asg", p.asg),
        fmt::arg("rj", p.rj), fmt::arg("rel", p.rel), fmt::arg("acc", p.acc), fmt::arg("i", i),
        fmt::arg("rj_effect", rj_effect));
  }
  out += fmt::format(
      "  [{}!!] inform = 1 -> (inform'=0);\n"
      "  [{}!!] inform = 2 -> (inform'=0);\n"
      "endmodule\n",
      w.action("f"), w.action("u"));
  (void)tree;
  return out;
}

struct Signals {
  std::string f, u;
};

// Counter templates.  `threshold` is the number of failed inputs at which the
// gate is failed: n for AND, 1 for OR, k for VOT.
std::string and_text(const std::string& name, const Signals& out,
                     const std::vector<Signals>& in) {
  const std::size_t n = in.size();
  std::string s = fmt::format(
      "module {}\n"
      "  informf : bool init false;\n"
      "  informu : bool init false;\n"
      "  count : [0..{}] init 0;\n",
      name, n);
  for (const auto& i : in) {
    s += fmt::format("  [{}??] count = {} -> (count'={}) & (informf'=true);\n", i.f, n - 1, n);
    if (n > 1) s += fmt::format("  [{}??] count < {} -> (count'=count + 1);\n", i.f, n - 1);
  }
  for (const auto& i : in) {
    s += fmt::format("  [{}??] count = {} -> (count'={}) & (informu'=true);\n", i.u, n, n - 1);
    if (n > 1) {
      s += fmt::format("  [{}??] count > 0 & count < {} -> (count'=count - 1);\n", i.u, n);
    }
  }
  s += fmt::format(
      "  [{}!!] informf & count = {} -> (informf'=false);\n"
      "  [{}!!] informu & count != {} -> (informu'=false);\n"
      "endmodule\n",
      out.f, n, out.u, n);
  return s;
}

std::string or_text(const std::string& name, const Signals& out,
                    const std::vector<Signals>& in) {
  const std::size_t n = in.size();
  std::string s = fmt::format(
      "module {}\n"
      "  informf : bool init false;\n"
      "  informu : bool init false;\n"
      "  count : [0..{}] init 0;\n",
      name, n);
  for (const auto& i : in) {
    s += fmt::format("  [{}??] count = 0 -> (count'=1) & (informf'=true);\n", i.f);
    if (n > 1) s += fmt::format("  [{}??] count > 0 & count < {} -> (count'=count + 1);\n", i.f, n);
  }
  for (const auto& i : in) {
    s += fmt::format("  [{}??] count = 1 -> (count'=0) & (informu'=true);\n", i.u);
    if (n > 1) s += fmt::format("  [{}??] count > 1 -> (count'=count - 1);\n", i.u);
  }
  s += fmt::format(
      "  [{}!!] informf & count != 0 -> (informf'=false);\n"
      "  [{}!!] informu & count = 0 -> (informu'=false);\n"
      "endmodule\n",
      out.f, out.u);
  return s;
}

std::string vot_text(const std::string& name, int k, const Signals& out,
                     const std::vector<Signals>& in) {
  const std::size_t n = in.size();
  std::string s = fmt::format(
      "module {}\n"
      "  count : [0..{}] init 0;\n"
      "  inform : bool init false;\n",
      name, n);
  for (const auto& i : in) {
    s += fmt::format(
        "  [{}??] count < {} -> (count'=count + 1) & (inform'=inform | count + 1 = {});\n", i.f,
        n, k);
  }
  for (const auto& i : in) {
    s += fmt::format(
        "  [{}??] count > 0 -> (count'=count - 1) & (inform'=inform | count = {});\n", i.u, k);
  }
  s += fmt::format(
      "  [{}!!] inform & count >= {} -> (inform'=false);\n"
      "  [{}!!] inform & count < {} -> (inform'=false);\n"
      "endmodule\n",
      out.f, k, out.u, k);
  return s;
}

std::string pand_text(const std::string& name, const Signals& out, const Signals& a,
                      const Signals& b) {
  return fmt::format(
      "module {name}\n"
      "  f0 : bool init false;\n"
      "  f1 : bool init false;\n"
      "  st : [0..4] init 0;\n"
      "  [_?] st = 0 & f1 & !f0 -> (st'=4);\n"
      "  [{f0}??] st = 0 & !f0 & !f1 -> (f0'=true);\n"
      "  [{f0}??] st = 0 & !f0 & f1 -> (st'=1) & (f0'=true);\n"
      "  [{f0}??] st != 0 & !f0 -> (f0'=true);\n"
      "  [{f1}??] st = 0 & !f0 & !f1 -> (f1'=true);\n"
      "  [{f1}??] st = 0 & f0 & !f1 -> (st'=1) & (f1'=true);\n"
      "  [{f1}??] st = 3 & !f1 -> (st'=2) & (f1'=true);\n"
      "  [{f1}??] (st = 1 | st = 2 | st = 4) & !f1 -> (f1'=true);\n"
      "  [{u0}??] st != 1 & f0 -> (f0'=false);\n"
      "  [{u0}??] st = 1 & f0 -> (st'=0) & (f0'=false);\n"
      "  [{u1}??] (st = 0 | st = 3) & f1 -> (f1'=false);\n"
      "  [{u1}??] (st = 1 | st = 4) & f1 -> (st'=0) & (f1'=false);\n"
      "  [{u1}??] st = 2 & f1 -> (st'=3) & (f1'=false);\n"
      "  [{f}!!] st = 1 -> (st'=2);\n"
      "  [{u}!!] st = 3 -> (st'=0);\n"
      "endmodule\n",
      fmt::arg("name", name), fmt::arg("f0", a.f), fmt::arg("u0", a.u), fmt::arg("f1", b.f),
      fmt::arg("u1", b.u), fmt::arg("f", out.f), fmt::arg("u", out.u));
}

std::string rbox_text(const std::string& name, RepairPolicy policy,
                      const std::vector<const VertexWiring*>& in) {
  const std::size_t n = in.size();
  std::string s = fmt::format("module {}\n", name);
  switch (policy) {
    case RepairPolicy::kPriority:
      s += fmt::format("  broken[{}] : bool init false;\n  busy : bool init false;\n", n);
      for (std::size_t i = 0; i < n; ++i) {
        s += fmt::format("  [{}?] true -> (broken[{}]'=true);\n", in[i]->action("fl"), i);
      }
      for (std::size_t i = 0; i < n; ++i) {
        std::string higher;
        for (std::size_t k = i; k-- > 0;) higher += fmt::format(" & !broken[{}]", k);
        s += fmt::format("  [{}!!] !busy & broken[{}]{} -> (busy'=true);\n",
                         in[i]->action("r"), i, higher);
      }
      for (std::size_t i = 0; i < n; ++i) {
        s += fmt::format("  [{}?] true -> (broken[{}]'=false) & (busy'=false);\n",
                         in[i]->action("up"), i);
      }
      break;
    case RepairPolicy::kFcfs:
      s += fmt::format(
          "  queue[{n}] : [0..{n}] init 0;\n  busy : bool init false;\n"
          "  r : [0..{n}] init {n};\n  dummy : [0..0] init 0;\n",
          fmt::arg("n", n));
      for (std::size_t i = 0; i < n; ++i) {
        s += fmt::format("  [{}?] true -> (dummy'=broken(queue, {}));\n", in[i]->action("fl"),
                         i);
      }
      s += fmt::format("  [!!] fstexclude(queue, 0) != -1 & r = {} -> (r'=maxfrom(queue, 0));\n",
                       n);
      for (std::size_t i = 0; i < n; ++i) {
        s += fmt::format("  [{}!!] !busy & r = {i} -> (busy'=true) & (queue[{i}]'=0);\n",
                         in[i]->action("r"), fmt::arg("i", i));
      }
      for (std::size_t i = 0; i < n; ++i) {
        s += fmt::format("  [{}?] true -> (queue[{}]'=0) & (busy'=false) & (r'={});\n",
                         in[i]->action("up"), i, n);
      }
      break;
    case RepairPolicy::kRandom:
      s += fmt::format(
          "  broken[{n}] : bool init false;\n  busy : bool init false;\n"
          "  r : [0..{n}] init {n};\n",
          fmt::arg("n", n));
      for (std::size_t i = 0; i < n; ++i) {
        s += fmt::format("  [{}?] true -> (broken[{}]'=true);\n", in[i]->action("fl"), i);
      }
      s += fmt::format("  [!!] some(broken) & r = {} -> (r'=random(broken));\n", n);
      for (std::size_t i = 0; i < n; ++i) {
        s += fmt::format("  [{}!!] !busy & r = {} -> (busy'=true);\n", in[i]->action("r"), i);
      }
      for (std::size_t i = 0; i < n; ++i) {
        s += fmt::format("  [{}?] true -> (broken[{}]'=false) & (busy'=false) & (r'={});\n",
                         in[i]->action("up"), i, n);
      }
      break;
  }
  return s + "endmodule\n";
}

}  // namespace

std::vector<SymbolicModule> compile_vertex(const FaultTreeDef& tree, const Vertex& v,
                                           const WiringPlan& wiring) {
  const VertexWiring& w = wiring.at(v.name);
  const std::size_t n = v.inputs.size();
  std::vector<Signals> in;
  for (const auto& name : v.inputs) {
    const VertexWiring& iw = wiring.at(name);
    if (iw.actions.count("f")) in.push_back({iw.action("f"), iw.action("u")});
  }
  std::vector<std::string> texts;
  const ElementLabel& l = v.label;
  switch (l.kind) {
    case ElementKind::kBe:
      texts.push_back(be_text(v.name, w, l));
      break;
    case ElementKind::kSbe: {
      std::vector<const SparePair*> pairs;
      auto it = tree.spare_users.find(v.name);
      if (it == tree.spare_users.end() || it->second.empty()) {
        throw UnsupportedArity("spare '" + v.name + "' has no spare gate");
      }
      for (const auto& g : it->second) pairs.push_back(&wiring.pair(g, v.name));
      texts.push_back(sbe_text(v.name, w, l));
      texts.push_back(mux_text(v.name + "_mux", w, pairs));
      break;
    }
    case ElementKind::kAnd:
      if (n < 1) throw UnsupportedArity("AND '" + v.name + "' without inputs");
      texts.push_back(and_text(v.name, {w.action("f"), w.action("u")}, in));
      break;
    case ElementKind::kOr:
      if (n < 1) throw UnsupportedArity("OR '" + v.name + "' without inputs");
      texts.push_back(or_text(v.name, {w.action("f"), w.action("u")}, in));
      break;
    case ElementKind::kVot: {
      if (l.k < 1 || static_cast<std::size_t>(l.k) > n) {
        throw UnsupportedArity("VOT '" + v.name + "' threshold outside 1..n");
      }
      Signals out{w.action("f"), w.action("u")};
      if (l.k == 1) {
        texts.push_back(or_text(v.name, out, in));
      } else if (static_cast<std::size_t>(l.k) == n) {
        texts.push_back(and_text(v.name, out, in));
      } else {
        texts.push_back(vot_text(v.name, l.k, out, in));
      }
      break;
    }
    case ElementKind::kPand: {
      if (n < 2) throw UnsupportedArity("PAND '" + v.name + "' needs two inputs");
      Signals left = in[0];
      for (std::size_t j = 1; j < n; ++j) {
        bool last = j + 1 == n;
        std::string module = last ? v.name : pand_inner(v.name, j);
        Signals out = last ? Signals{w.action("f"), w.action("u")}
                           : Signals{"f_" + module, "u_" + module};
        texts.push_back(pand_text(module, out, left, in[j]));
        left = out;
      }
      break;
    }
    case ElementKind::kSg:
      if (n < 2) throw UnsupportedArity("spare gate '" + v.name + "' has no spares");
      texts.push_back(sg_text(v.name, w, tree, wiring, v));
      break;
    case ElementKind::kRbox: {
      if (n < 1) throw UnsupportedArity("RBOX '" + v.name + "' without inputs");
      std::vector<const VertexWiring*> ins;
      for (const auto& name : v.inputs) ins.push_back(&wiring.at(name));
      texts.push_back(rbox_text(v.name, l.policy, ins));
      break;
    }
    case ElementKind::kFdep:
      throw UnsupportedArity("FDEP '" + v.name + "' must be rewritten before compilation");
  }
  std::vector<SymbolicModule> out;
  for (const auto& t : texts) out.push_back(parse_module(t));
  return out;
}

SymbolicModule top_event_monitor(const WiringPlan& wiring) {
  return parse_module(fmt::format(
      "module {}\n"
      "  {} : bool init false;\n"
      "  [{}??] true -> ({}'=true);\n"
      "  [{}??] true -> ({}'=false);\n"
      "endmodule\n",
      kMonitorModule, kMonitorVar, wiring.top_fail, kMonitorVar, wiring.top_up, kMonitorVar));
}

CompiledModel compile_tree(const FaultTreeDef& tree) {
  CompiledModel model;
  model.tree = rewrite_fdep(tree);
  model.wiring = make_wiring(model.tree);
  for (const auto& v : model.tree.vertices) {
    for (auto& m : compile_vertex(model.tree, v, model.wiring)) {
      model.modules.push_back(std::move(m));
    }
  }
  return model;
}

std::string emit_iosa(const CompiledModel& model) {
  std::string out = "// rftiosa compiled model\n";
  out += fmt::format("// top {} fail={} up={}\n", model.wiring.top, model.wiring.top_fail,
                     model.wiring.top_up);
  for (const auto& w : model.wiring.vertices) {
    out += fmt::format("// vertex {} {} modules=", w.vertex, kind_name(w.kind));
    for (std::size_t i = 0; i < w.modules.size(); ++i) {
      out += (i ? "," : "") + w.modules[i];
    }
    for (const auto& [role, action] : w.actions) out += fmt::format(" {}={}", role, action);
    out += "\n";
  }
  for (const auto& p : model.wiring.pairs) {
    out += fmt::format("// spare {} {} rq={} asg={} acc={} rj={} rel={}\n", p.gate, p.spare,
                       p.rq, p.asg, p.acc, p.rj, p.rel);
  }
  out += "\n";
  return out + print_model(closed_model(model));
}

std::vector<SymbolicModule> closed_model(const CompiledModel& model) {
  std::vector<SymbolicModule> all = model.modules;
  all.push_back(top_event_monitor(model.wiring));
  return all;
}

}  // namespace rft
