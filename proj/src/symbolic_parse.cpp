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

#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <stdexcept>

#include "rft/errors.hpp"
#include "rft/symbolic.hpp"

namespace rft {

Expr Expr::boolean(bool b) {
  Expr e;
  e.kind = ExprKind::kBool;
  e.value = b ? 1 : 0;
  return e;
}

Expr Expr::integer(std::int64_t v) {
  Expr e;
  e.kind = ExprKind::kInt;
  e.value = v;
  return e;
}

Expr Expr::var(std::string n) {
  Expr e;
  e.kind = ExprKind::kVar;
  e.name = std::move(n);
  return e;
}

bool is_output(Decoration d) {
  return d == Decoration::kOutput || d == Decoration::kUrgentOutput;
}

bool is_urgent(Decoration d) {
  return d == Decoration::kUrgentInput || d == Decoration::kUrgentOutput;
}

std::string silent_label(std::string_view module) { return "tau." + std::string(module); }

const VarDecl* SymbolicModule::find_var(std::string_view n) const {
  for (const auto& v : vars) {
    if (v.name == n) return &v;
  }
  return nullptr;
}

std::map<std::string, Distribution> SymbolicModule::clock_laws() const {
  std::map<std::string, Distribution> laws;
  for (const auto& t : transitions) {
    for (const auto& r : t.resets) laws.emplace(r.clock, r.law);
  }
  return laws;
}

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok { kIdent, kInt, kReal, kPunct, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::vector<Token> lex(std::string_view src) {
  static const char* const kPuncts[] = {"->", "..", "??", "!!", "!=", "==", "<=", ">=",
                                        "[",  "]",  "(",  ")",  ":",  ";",  ",",  "@",
                                        "'",  "=",  "<",  ">",  "&",  "|",  "!",  "?",
                                        "+",  "-",  "*",  "/"};
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.compare(i, 2, "//") == 0) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      t.kind = Tok::kIdent;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      bool real = false;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j + 1 < src.size() && src[j] == '.' &&
          std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        real = true;
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          real = true;
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
      t.kind = real ? Tok::kReal : Tok::kInt;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    bool matched = false;
    for (const char* p : kPuncts) {
      std::string_view pv(p);
      if (src.compare(i, pv.size(), pv) == 0) {
        t.kind = Tok::kPunct;
        t.text = std::string(pv);
        advance(pv.size());
        out.push_back(std::move(t));
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

// ---------------------------------------------------------------- parser

bool is_intrinsic(std::string_view n) {
  return n == "broken" || n == "fstexclude" || n == "maxfrom" || n == "some" || n == "random";
}

bool is_reserved(std::string_view n) {
  return n == "module" || n == "endmodule" || n == "init" || n == "clock" || n == "bool" ||
         n == "boolean" || n == "true" || n == "false";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  std::vector<SymbolicModule> model() {
    std::vector<SymbolicModule> out;
    std::set<std::string> names;
    do {
      const Token& at = peek();
      out.push_back(module());
      if (!names.insert(out.back().name).second) {
        fail_at(at, "duplicate module '" + out.back().name + "'");
      }
    } while (peek().kind != Tok::kEnd);
    return out;
  }

  SymbolicModule single() {
    SymbolicModule m = module();
    if (peek().kind != Tok::kEnd) fail("trailing input after endmodule", {"end of input"});
    return m;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SymbolicModule* cur_ = nullptr;

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_punct(std::string_view p, std::size_t k = 0) const {
    return peek(k).kind == Tok::kPunct && peek(k).text == p;
  }
  bool at_word(std::string_view w) const {
    return peek().kind == Tok::kIdent && peek().text == w;
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg,
                            std::vector<std::string> expected = {}) const {
    throw ParseError(msg, t.line, t.column, std::move(expected));
  }
  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected = {}) const {
    fail_at(peek(), msg, std::move(expected));
  }
  std::string describe(const Token& t) const {
    return t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
  }
  void expect(std::string_view p) {
    if (!at_punct(p)) {
      fail("unexpected " + describe(peek()), {"'" + std::string(p) + "'"});
    }
    take();
  }
  void expect_word(std::string_view w) {
    if (!at_word(w)) fail("unexpected " + describe(peek()), {"'" + std::string(w) + "'"});
    take();
  }
  std::string name() {
    if (peek().kind != Tok::kIdent || is_reserved(peek().text) || peek().text == "_") {
      fail("unexpected " + describe(peek()), {"name"});
    }
    return take().text;
  }
  std::int64_t integer() {
    bool neg = false;
    if (at_punct("-")) {
      take();
      neg = true;
    }
    if (peek().kind != Tok::kInt) fail("unexpected " + describe(peek()), {"integer"});
    const Token& t = take();
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc()) fail_at(t, "integer literal out of range");
    return neg ? -v : v;
  }
  double real() {
    bool neg = false;
    if (at_punct("-")) {
      take();
      neg = true;
    }
    if (peek().kind != Tok::kInt && peek().kind != Tok::kReal) {
      fail("unexpected " + describe(peek()), {"number"});
    }
    const Token& t = take();
    double v = std::strtod(t.text.c_str(), nullptr);
    return neg ? -v : v;
  }

  SymbolicModule module() {
    SymbolicModule m;
    cur_ = &m;
    expect_word("module");
    m.name = name();
    std::set<std::string> declared;
    while (!at_punct("[") && !at_word("endmodule")) declaration(m, declared);
    if (!at_punct("[")) fail("module without transitions", {"'['"});
    std::map<std::string, std::pair<Distribution, Token>> laws;
    while (at_punct("[")) transition(m, laws);
    const Token& end = peek();
    expect_word("endmodule");
    for (const auto& t : m.transitions) {
      if (t.clock && !laws.count(*t.clock)) {
        fail_at(end, "clock '" + *t.clock + "' is never reset, so it has no distribution");
      }
    }
    cur_ = nullptr;
    return m;
  }

  void declaration(SymbolicModule& m, std::set<std::string>& declared) {
    std::vector<std::pair<std::string, Token>> names;
    names.emplace_back("", peek());
    names.back().first = name();
    std::optional<int> length;
    if (at_punct("[")) {
      take();
      const Token& lt = peek();
      std::int64_t n = integer();
      if (n < 1 || n > 1 << 16) fail_at(lt, "array length must be positive");
      length = static_cast<int>(n);
      expect("]");
    } else {
      while (at_punct(",")) {
        take();
        names.emplace_back("", peek());
        names.back().first = name();
      }
    }
    expect(":");
    for (const auto& [n, tok] : names) {
      if (!declared.insert(n).second) fail_at(tok, "duplicate declaration of '" + n + "'");
    }
    if (at_word("clock")) {
      if (length) fail("arrays of clocks are not supported");
      take();
      expect(";");
      for (const auto& [n, tok] : names) m.clocks.push_back(n);
      return;
    }
    if (names.size() > 1) fail("only clocks may share a declaration", {"'clock'"});
    VarDecl v;
    v.name = names.front().first;
    v.length = length;
    if (at_word("bool") || at_word("boolean")) {
      take();
      v.type = VarType::kBool;
      v.lo = 0;
      v.hi = 1;
    } else if (at_punct("[")) {
      take();
      v.type = VarType::kInt;
      v.lo = integer();
      expect("..");
      v.hi = integer();
      expect("]");
      if (v.lo > v.hi) fail("empty range");
    } else {
      fail("unexpected " + describe(peek()), {"'bool'", "'clock'", "range"});
    }
    expect_word("init");
    const Token& it = peek();
    if (v.type == VarType::kBool) {
      if (at_word("true") || at_word("false")) {
        v.init = take().text == "true" ? 1 : 0;
      } else {
        fail("boolean variable needs a boolean initial value", {"'true'", "'false'"});
      }
    } else {
      if (at_word("true") || at_word("false")) fail("integer variable initialised with a boolean");
      v.init = integer();
      if (v.init < v.lo || v.init > v.hi) fail_at(it, "initial value outside declared range");
    }
    expect(";");
    m.vars.push_back(std::move(v));
  }

  bool is_clock(std::string_view n) const {
    for (const auto& c : cur_->clocks) {
      if (c == n) return true;
    }
    return false;
  }

  void transition(SymbolicModule& m,
                  std::map<std::string, std::pair<Distribution, Token>>& laws) {
    const Token& start = peek();
    expect("[");
    SymbolicTransition t;
    if (peek().kind == Tok::kIdent) {
      if (peek().text == "_") {
        take();
        t.label = "_";
      } else {
        t.label = name();
      }
      if (at_punct("?")) {
        t.decoration = Decoration::kInput;
      } else if (at_punct("??")) {
        t.decoration = Decoration::kUrgentInput;
      } else if (at_punct("!")) {
        t.decoration = Decoration::kOutput;
      } else if (at_punct("!!")) {
        t.decoration = Decoration::kUrgentOutput;
      } else {
        fail("action needs a decoration", {"'?'", "'?\?'", "'!'", "'!!'"});
      }
      take();
      if (t.wildcard() && t.decoration != Decoration::kInput) {
        fail_at(start, "the wildcard only stands for non-urgent inputs");
      }
    } else if (at_punct("!!")) {
      take();
      t.decoration = Decoration::kUrgentOutput;
    } else {
      fail("unexpected " + describe(peek()), {"action", "'!!'"});
    }
    expect("]");
    if (!at_punct("@") && !at_punct("->")) {
      const Token& g = peek();
      t.guard = expr();
      require(g, t.guard, VarType::kBool, "guard must be boolean");
    }
    if (at_punct("@")) {
      take();
      const Token& ct = peek();
      std::string c = name();
      if (!is_clock(c)) fail_at(ct, "'" + c + "' is not a clock");
      t.clock = c;
    }
    if (t.decoration == Decoration::kOutput && !t.clock) {
      fail_at(start, "non-urgent output needs an enabling clock", {"'@'"});
    }
    if (t.decoration != Decoration::kOutput && t.clock) {
      fail_at(start, "only non-urgent outputs may have an enabling clock");
    }
    expect("->");
    std::set<std::string> scalar_targets;
    std::set<std::string> reset_targets;
    if (!at_punct(";")) {
      for (;;) {
        update(t, scalar_targets, reset_targets, laws);
        if (!at_punct("&")) break;
        take();
      }
    }
    expect(";");
    m.transitions.push_back(std::move(t));
  }

  void update(SymbolicTransition& t, std::set<std::string>& scalars,
              std::set<std::string>& resets,
              std::map<std::string, std::pair<Distribution, Token>>& laws) {
    expect("(");
    const Token& nt = peek();
    std::string target = name();
    if (is_clock(target)) {
      expect("'");
      expect("=");
      if (!resets.insert(target).second) fail_at(nt, "clock '" + target + "' reset twice");
      const Token& ft = peek();
      std::string family = name_or_word();
      expect("(");
      std::vector<double> params;
      params.push_back(real());
      while (at_punct(",")) {
        take();
        params.push_back(real());
      }
      expect(")");
      Distribution law;
      try {
        law = Distribution::make(family, params.data(), params.size());
      } catch (const std::invalid_argument& e) {
        fail_at(ft, e.what());
      }
      auto [it, fresh] = laws.emplace(target, std::make_pair(law, ft));
      if (!fresh && !(it->second.first == law)) {
        fail_at(ft, "clock '" + target + "' reset with two different distributions");
      }
      t.resets.push_back(ClockReset{target, law});
      expect(")");
      return;
    }
    const VarDecl* v = cur_->find_var(target);
    if (!v) fail_at(nt, "undeclared variable '" + target + "'");
    Assignment a;
    a.target = target;
    if (at_punct("[")) {
      if (!v->length) fail("'" + target + "' is not an array");
      take();
      const Token& it = peek();
      a.index = expr();
      require(it, *a.index, VarType::kInt, "array index must be an integer");
      expect("]");
    } else if (v->length) {
      fail_at(nt, "array '" + target + "' needs an index", {"'['"});
    } else if (!scalars.insert(target).second) {
      fail_at(nt, "variable '" + target + "' assigned twice");
    }
    expect("'");
    expect("=");
    const Token& et = peek();
    a.value = expr();
    require(et, a.value, v->type, "assignment type mismatch");
    expect(")");
    t.assignments.push_back(std::move(a));
  }

  std::string name_or_word() {
    if (peek().kind != Tok::kIdent) fail("unexpected " + describe(peek()), {"distribution"});
    return take().text;
  }

  // Expressions, loosest binding first.
  Expr expr() { return binary(0); }

  static int precedence(const Token& t) {
    if (t.kind != Tok::kPunct) return -1;
    const std::string& s = t.text;
    if (s == "|") return 0;
    if (s == "&") return 1;
    if (s == "=" || s == "==" || s == "!=") return 2;
    if (s == "<" || s == "<=" || s == ">" || s == ">=") return 3;
    if (s == "+" || s == "-") return 4;
    if (s == "*" || s == "/") return 5;
    return -1;
  }

  static Op op_of(const std::string& s) {
    if (s == "|") return Op::kOr;
    if (s == "&") return Op::kAnd;
    if (s == "=" || s == "==") return Op::kEq;
    if (s == "!=") return Op::kNe;
    if (s == "<") return Op::kLt;
    if (s == "<=") return Op::kLe;
    if (s == ">") return Op::kGt;
    if (s == ">=") return Op::kGe;
    if (s == "+") return Op::kAdd;
    if (s == "-") return Op::kSub;
    if (s == "*") return Op::kMul;
    return Op::kDiv;
  }

  Expr binary(int level) {
    if (level > 5) return unary();
    Expr lhs = binary(level + 1);
    while (precedence(peek()) == level) {
      const Token& ot = take();
      Expr rhs = binary(level + 1);
      Expr e;
      e.kind = ExprKind::kBinary;
      e.op = op_of(ot.text);
      e.args.push_back(std::move(lhs));
      e.args.push_back(std::move(rhs));
      check_binary(ot, e);
      lhs = std::move(e);
    }
    return lhs;
  }

  Expr unary() {
    if (at_punct("!") || at_punct("-")) {
      const Token& ot = take();
      Expr e;
      e.kind = ExprKind::kUnary;
      e.op = ot.text == "!" ? Op::kNot : Op::kNeg;
      e.args.push_back(unary());
      require(ot, e.args[0], e.op == Op::kNot ? VarType::kBool : VarType::kInt,
              "operand type mismatch");
      return e;
    }
    return primary();
  }

  Expr primary() {
    const Token& t = peek();
    if (at_punct("(")) {
      take();
      Expr e = expr();
      expect(")");
      return e;
    }
    if (t.kind == Tok::kInt) {
      return Expr::integer(integer());
    }
    if (t.kind != Tok::kIdent) fail("unexpected " + describe(t), {"expression"});
    if (t.text == "true" || t.text == "false") {
      take();
      return Expr::boolean(t.text == "true");
    }
    if (is_intrinsic(t.text) && at_punct("(", 1)) return call();
    std::string n = name();
    const VarDecl* v = cur_->find_var(n);
    if (!v) {
      fail_at(t, is_clock(n) ? "clock '" + n + "' used in an expression"
                             : "undeclared variable '" + n + "'");
    }
    if (at_punct("[")) {
      if (!v->length) fail("'" + n + "' is not an array");
      take();
      const Token& it = peek();
      Expr e;
      e.kind = ExprKind::kIndex;
      e.name = n;
      e.args.push_back(expr());
      require(it, e.args[0], VarType::kInt, "array index must be an integer");
      expect("]");
      return e;
    }
    if (v->length) fail_at(t, "array '" + n + "' used without an index");
    return Expr::var(n);
  }

  Expr call() {
    const Token& t = take();
    Expr e;
    e.kind = ExprKind::kCall;
    e.name = t.text;
    expect("(");
    const Token& at = peek();
    std::string arr = name();
    const VarDecl* v = cur_->find_var(arr);
    if (!v || !v->length) fail_at(at, "'" + t.text + "' expects an array");
    e.args.push_back(Expr::var(arr));
    std::size_t want = (t.text == "some" || t.text == "random") ? 1 : 2;
    while (at_punct(",")) {
      take();
      const Token& xt = peek();
      e.args.push_back(expr());
      require(xt, e.args.back(), VarType::kInt, "intrinsic argument must be an integer");
    }
    if (e.args.size() != want) fail_at(t, "wrong number of arguments to '" + t.text + "'");
    expect(")");
    return e;
  }

  VarType type_of(const Expr& e) const {
    switch (e.kind) {
      case ExprKind::kBool:
        return VarType::kBool;
      case ExprKind::kInt:
        return VarType::kInt;
      case ExprKind::kVar:
      case ExprKind::kIndex:
        return cur_->find_var(e.name)->type;
      case ExprKind::kUnary:
        return e.op == Op::kNot ? VarType::kBool : VarType::kInt;
      case ExprKind::kBinary:
        switch (e.op) {
          case Op::kAdd:
          case Op::kSub:
          case Op::kMul:
          case Op::kDiv:
            return VarType::kInt;
          default:
            return VarType::kBool;
        }
      case ExprKind::kCall:
        return e.name == "some" ? VarType::kBool : VarType::kInt;
    }
    return VarType::kInt;
  }

  void require(const Token& at, const Expr& e, VarType want, const std::string& msg) const {
    if (type_of(e) != want) fail_at(at, msg);
  }

  void check_binary(const Token& at, const Expr& e) const {
    const Expr& l = e.args[0];
    const Expr& r = e.args[1];
    switch (e.op) {
      case Op::kOr:
      case Op::kAnd:
        require(at, l, VarType::kBool, "operand type mismatch");
        require(at, r, VarType::kBool, "operand type mismatch");
        break;
      case Op::kEq:
      case Op::kNe:
        if (type_of(l) != type_of(r)) fail_at(at, "comparison of bool with int");
        break;
      case Op::kDiv:
        if (r.kind != ExprKind::kInt || r.value == 0) {
          fail_at(at, "division only by a nonzero integer literal");
        }
        [[fallthrough]];
      default:
        require(at, l, VarType::kInt, "operand type mismatch");
        require(at, r, VarType::kInt, "operand type mismatch");
        break;
    }
  }
};

// ---------------------------------------------------------------- printer

int print_prec(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kBinary:
      switch (e.op) {
        case Op::kOr:
          return 0;
        case Op::kAnd:
          return 1;
        case Op::kEq:
        case Op::kNe:
          return 2;
        case Op::kLt:
        case Op::kLe:
        case Op::kGt:
        case Op::kGe:
          return 3;
        case Op::kAdd:
        case Op::kSub:
          return 4;
        default:
          return 5;
      }
    case ExprKind::kUnary:
      return 6;
    default:
      return 7;
  }
}

const char* op_text(Op op) {
  switch (op) {
    case Op::kOr:
      return "|";
    case Op::kAnd:
      return "&";
    case Op::kEq:
      return "=";
    case Op::kNe:
      return "!=";
    case Op::kLt:
      return "<";
    case Op::kLe:
      return "<=";
    case Op::kGt:
      return ">";
    case Op::kGe:
      return ">=";
    case Op::kAdd:
      return "+";
    case Op::kSub:
      return "-";
    case Op::kMul:
      return "*";
    case Op::kDiv:
      return "/";
    case Op::kNot:
      return "!";
    case Op::kNeg:
      return "-";
    default:
      return "?";
  }
}

void print_into(std::string& out, const Expr& e) {
  auto child = [&](const Expr& c, bool paren) {
    if (paren) out += '(';
    print_into(out, c);
    if (paren) out += ')';
  };
  switch (e.kind) {
    case ExprKind::kBool:
      out += e.value ? "true" : "false";
      return;
    case ExprKind::kInt:
      out += std::to_string(e.value);
      return;
    case ExprKind::kVar:
      out += e.name;
      return;
    case ExprKind::kIndex:
      out += e.name + "[";
      print_into(out, e.args[0]);
      out += "]";
      return;
    case ExprKind::kUnary:
      out += op_text(e.op);
      child(e.args[0], print_prec(e.args[0]) < 7);
      return;
    case ExprKind::kBinary: {
      int p = print_prec(e);
      child(e.args[0], print_prec(e.args[0]) < p);
      out += ' ';
      out += op_text(e.op);
      out += ' ';
      child(e.args[1], print_prec(e.args[1]) <= p);
      return;
    }
    case ExprKind::kCall:
      out += e.name + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        print_into(out, e.args[i]);
      }
      out += ")";
      return;
  }
}

const char* decoration_text(Decoration d) {
  switch (d) {
    case Decoration::kInput:
      return "?";
    case Decoration::kUrgentInput:
      return "??";
    case Decoration::kOutput:
      return "!";
    case Decoration::kUrgentOutput:
      return "!!";
  }
  return "";
}

}  // namespace

std::string print_expr(const Expr& e) {
  std::string out;
  print_into(out, e);
  return out;
}

SymbolicModule parse_module(std::string_view text) { return Parser(text).single(); }

std::vector<SymbolicModule> parse_model(std::string_view text) { return Parser(text).model(); }

std::string print_module(const SymbolicModule& m) {
  std::string out = "module " + m.name + "\n";
  if (!m.clocks.empty()) {
    out += "  ";
    for (std::size_t i = 0; i < m.clocks.size(); ++i) {
      if (i) out += ", ";
      out += m.clocks[i];
    }
    out += " : clock;\n";
  }
  for (const auto& v : m.vars) {
    out += "  " + v.name;
    if (v.length) out += "[" + std::to_string(*v.length) + "]";
    out += " : ";
    if (v.type == VarType::kBool) {
      out += "bool init ";
      out += v.init ? "true" : "false";
    } else {
      out += "[" + std::to_string(v.lo) + ".." + std::to_string(v.hi) + "] init " +
             std::to_string(v.init);
    }
    out += ";\n";
  }
  out += "\n";
  for (const auto& t : m.transitions) {
    out += "  [" + t.label + decoration_text(t.decoration) + "] " + print_expr(t.guard);
    if (t.clock) out += " @ " + *t.clock;
    out += " ->";
    bool first = true;
    auto sep = [&] {
      out += first ? " " : " & ";
      first = false;
    };
    for (const auto& a : t.assignments) {
      sep();
      out += "(" + a.target;
      if (a.index) out += "[" + print_expr(*a.index) + "]";
      out += "'=" + print_expr(a.value) + ")";
    }
    for (const auto& r : t.resets) {
      sep();
      out += "(" + r.clock + "'=" + r.law.to_string() + ")";
    }
    out += ";\n";
  }
  out += "endmodule\n";
  return out;
}

std::string print_model(const std::vector<SymbolicModule>& modules) {
  std::string out;
  for (std::size_t i = 0; i < modules.size(); ++i) {
    if (i) out += "\n";
    out += print_module(modules[i]);
  }
  return out;
}

}  // namespace rft
