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
#include "rft/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "rft/compiler.hpp"
#include "rft/determinism.hpp"
#include "rft/errors.hpp"
#include "rft/fault_tree.hpp"
#include "rft/iosa.hpp"
#include "rft/simulator.hpp"
#include "rft/symbolic.hpp"

namespace rft {
namespace {

namespace fs = std::filesystem;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised after the violations have been printed.
struct InvalidTree : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return ss.str();
}

// Writes through a temporary so a failure never leaves a partial file.
void write_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) {
      std::remove(tmp.c_str());
      throw IoError("cannot write " + path);
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw IoError("cannot write " + path + ": " + ec.message());
  }
}

bool is_iosa(const std::string& path) { return fs::path(path).extension() == ".iosa"; }

class Report {
 public:
  template <typename T>
  void add(std::string key, const T& value) {
    lines_.emplace_back(std::move(key), fmt::format("{}", value));
  }
  void print(std::ostream& out) const {
    out << "---\n";
    for (const auto& [k, v] : lines_) out << k << "=" << v << "\n";
    out << "---\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

std::string join(const std::vector<std::string>& xs, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string fmt_double(double x) { return fmt::format("{:.10g}", x); }

struct Options {
  std::string file;
  std::string output;
  bool kv_only = false;
  bool force = false;
  bool probe = false;
  std::string trace;
  std::string metric = "unreliability";
  std::string tiebreak = "lex";
  double horizon = 1000;
  std::uint64_t runs = 10000;
  std::uint64_t seed = 1;
  double confidence = 0.95;
  unsigned jobs = 1;
};

// Prints the violations of `tree`; true if there are none.
bool report_validation(const FaultTreeDef& tree, std::ostream& text, Report& rep) {
  const auto violations = validate_rft(tree);
  for (const auto& v : violations) {
    text << "violation " << rule_name(v.rule) << " [" << join(v.vertices) << "] " << v.message
         << "\n";
  }
  const auto dangling = dangling_leaves(tree);
  for (const auto& d : dangling) text << "warning " << d << " feeds no gate\n";
  rep.add("violations", violations.size());
  rep.add("warnings", dangling.size());
  return violations.empty();
}

// .iosa files are taken as they are; fault trees are validated and compiled,
// monitor included.
std::vector<SymbolicModule> load_model(const Options& o, std::ostream& text, Report& rep) {
  const std::string src = read_file(o.file);
  if (is_iosa(o.file)) {
    rep.add("input", "iosa");
    return parse_model(src);
  }
  rep.add("input", "rft");
  const FaultTreeDef tree = parse_rft(src);
  if (!report_validation(tree, text, rep)) throw InvalidTree("the fault tree is not valid");
  return closed_model(compile_tree(tree));
}

int cmd_validate(const Options& o, std::ostream& text, Report& rep) {
  rep.add("file", o.file);
  const FaultTreeDef tree = parse_rft(read_file(o.file));
  const bool ok = report_validation(tree, text, rep);
  rep.add("status", ok ? "valid" : "invalid");
  return ok ? kExitOk : kExitNegative;
}

int cmd_compile(const Options& o, std::ostream& text, Report& rep) {
  rep.add("file", o.file);
  const FaultTreeDef tree = parse_rft(read_file(o.file));
  if (!report_validation(tree, text, rep)) {
    rep.add("status", "invalid");
    return kExitNegative;
  }
  const std::string iosa = emit_iosa(compile_tree(tree));
  // The output must read back and every module must be a proper IOSA.
  const auto modules = parse_model(iosa);
  const Alphabet alphabet = build_alphabet(modules);
  std::size_t bad = 0;
  for (const auto& m : modules) {
    for (const auto& v : check_def1(expand(m, alphabet).automaton)) {
      text << "def1 " << m.name << " " << v.message << "\n";
      ++bad;
    }
  }
  if (bad) {
    rep.add("status", "ill-formed");
    return kExitNegative;
  }
  const std::string out = o.output.empty()
                              ? fs::path(o.file).replace_extension(".iosa").string()
                              : o.output;
  write_file(out, iosa);
  std::vector<std::string> names;
  for (const auto& m : modules) names.push_back(m.name);
  text << "wrote " << out << "\n";
  rep.add("status", "compiled");
  rep.add("out", out);
  rep.add("modules", modules.size());
  rep.add("module_names", join(names));
  return kExitOk;
}

bool run_check(const std::vector<SymbolicModule>& modules, std::ostream& text, Report& rep) {
  const auto start = std::chrono::steady_clock::now();
  const DeterminismVerdict v = verdict(modules);
  std::size_t partial = 0, pairs = 0;
  for (const auto& c : v.components) {
    text << "component " << c.name << " states=" << c.states << "\n";
    if (c.members.size() > 1) {
      ++partial;
      text << "  note: partial composition of " << join(c.members) << "\n";
    }
    for (const auto& [ab, w] : c.confluence.non_confluent) {
      ++pairs;
      text << "  nonconfluent (" << ab.first << "," << ab.second << ") witnesses=" << w.size()
           << " first=" << w.front() << "\n";
    }
  }
  if (!v.closed) text << "the model is not closed\n";
  if (v.counterexample) {
    const auto& ce = *v.counterexample;
    text << "counterexample a=" << ce.ab.first << " b=" << ce.ab.second
         << " component=" << ce.component << " witness=" << ce.witness << " c=" << ce.c
         << " d=" << ce.d;
    if (ce.initial) {
      text << " via=initial\n";
    } else {
      text << " via=" << ce.e << "\n";
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep.add("weakly_deterministic", v.weakly_deterministic ? "true" : "false");
  rep.add("closed", v.closed ? "true" : "false");
  rep.add("components", v.components.size());
  rep.add("partial_compositions", partial);
  rep.add("nonconfluent_pairs", pairs);
  if (v.counterexample) {
    const auto& ce = *v.counterexample;
    rep.add("counterexample", fmt::format("{},{},{},{},{}", ce.ab.first, ce.ab.second, ce.c,
                                          ce.d, ce.initial ? "initial" : ce.e));
  }
  rep.add("check_seconds", fmt_double(secs));
  return v.weakly_deterministic;
}

int cmd_check(const Options& o, std::ostream& text, Report& rep) {
  rep.add("file", o.file);
  const auto modules = load_model(o, text, rep);
  return run_check(modules, text, rep) ? kExitOk : kExitNegative;
}

TieBreak parse_tiebreak(const std::string& s) {
  if (s == "revlex") return TieBreak::kRevLex;
  if (s == "random") return TieBreak::kRandom;
  return TieBreak::kLex;
}

void add_estimate(Report& rep, const SimEstimate& e, const std::string& prefix = "") {
  rep.add(prefix + "estimate", fmt_double(e.estimate));
  rep.add(prefix + "half_width", fmt_double(e.half_width));
  rep.add(prefix + "ci_low", fmt_double(e.estimate - e.half_width));
  rep.add(prefix + "ci_high", fmt_double(e.estimate + e.half_width));
}

int cmd_simulate(const Options& o, std::ostream& text, Report& rep) {
  rep.add("file", o.file);
  const Metric metric =
      o.metric == "unavailability" ? Metric::kUnavailability : Metric::kUnreliability;
  if (metric == Metric::kUnavailability && o.horizon <= 0) {
    throw std::invalid_argument("--horizon must be positive for unavailability");
  }
  const auto modules = load_model(o, text, rep);
  if (!o.force && !run_check(modules, text, rep)) {
    text << "refusing to simulate a model that is not shown weakly deterministic "
            "(--force overrides)\n";
    return kExitNegative;
  }
  const Network net(modules);
  SimOptions so;
  so.horizon = o.horizon;
  so.runs = o.runs;
  so.seed = o.seed;
  so.confidence = o.confidence;
  so.tiebreak = parse_tiebreak(o.tiebreak);
  so.jobs = o.jobs;
  const SimEstimate e = estimate(net, metric, so);
  text << metric_name(metric) << " " << fmt_double(e.estimate) << " +- "
       << fmt_double(e.half_width) << " (" << o.confidence * 100 << "%, " << e.runs
       << " runs)\n";
  rep.add("metric", metric_name(metric));
  add_estimate(rep, e);
  rep.add("confidence", fmt_double(e.confidence));
  rep.add("runs", e.runs);
  rep.add("seed", e.seed);
  rep.add("horizon", fmt_double(e.horizon));
  rep.add("tiebreak", tiebreak_name(e.tiebreak));
  rep.add("jobs", so.jobs);
  rep.add("wall_seconds", fmt_double(e.wall_seconds));
  if (!o.trace.empty()) {
    std::string lines;
    for (const auto& ev : record_trace(net, metric, so)) lines += format_trace_event(ev) + "\n";
    write_file(o.trace, lines);
    rep.add("trace", o.trace);
  }
  if (o.probe) {
    const ProbeReport p = order_invariance_probe(net, metric, so);
    for (const auto& pe : p.estimates) {
      add_estimate(rep, pe, "probe_" + std::string(tiebreak_name(pe.tiebreak)) + "_");
    }
    rep.add("probe_max_difference", fmt_double(p.max_difference));
    rep.add("probe_overlap", p.intervals_overlap ? "true" : "false");
    rep.add("probe_reproducible", p.reproducible ? "true" : "false");
    if (!p.intervals_overlap || !p.reproducible) return kExitNegative;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Repairable fault trees as input/output stochastic automata", "rftiosa"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--kv", o.kv_only, "print only the key=value report");
  app.fallthrough();

  auto* validate = app.add_subcommand("validate", "check the well-formedness rules of a tree");
  validate->add_option("file", o.file, "fault tree (.rft)")->required();

  auto* compile = app.add_subcommand("compile", "translate a tree into symbolic IOSA modules");
  compile->add_option("file", o.file, "fault tree (.rft)")->required();
  compile->add_option("-o,--output", o.output, "output .iosa (default: input with .iosa)");

  auto* check = app.add_subcommand("check", "sufficient check for weak determinism");
  check->add_option("file", o.file, "fault tree (.rft) or model (.iosa)")->required();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of a dependability metric");
  simulate->add_option("file", o.file, "fault tree (.rft) or model (.iosa) with TopMonitor")
      ->required();
  simulate->add_option("--metric", o.metric)
      ->check(CLI::IsMember({"unreliability", "unavailability"}))
      ->capture_default_str();
  simulate->add_option("--horizon", o.horizon, "time bound T")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  simulate->add_option("--runs", o.runs, "independent runs (at least 2)")
      ->check(CLI::Range(std::uint64_t{2}, std::numeric_limits<std::uint64_t>::max()))
      ->capture_default_str();
  simulate->add_option("--seed", o.seed)->capture_default_str();
  simulate->add_option("--confidence", o.confidence)
      ->check(CLI::Range(1e-9, 1 - 1e-9))
      ->capture_default_str();
  simulate->add_option("--tiebreak", o.tiebreak, "order of simultaneous urgent outputs")
      ->check(CLI::IsMember({"lex", "revlex", "random"}))
      ->capture_default_str();
  simulate->add_option("--trace", o.trace, "write the events of run 0 to this file");
  simulate->add_option("--jobs", o.jobs, "worker threads")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  simulate->add_flag("--force", o.force, "simulate even if the check fails");
  simulate->add_flag("--probe", o.probe, "rerun under every tie-break policy and compare");

  std::vector<const char*> argv{"rftiosa"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  std::ostringstream text;
  Report rep;
  int code = kExitOk;
  try {
    if (*validate) {
      rep.add("command", "validate");
      code = cmd_validate(o, text, rep);
    } else if (*compile) {
      rep.add("command", "compile");
      code = cmd_compile(o, text, rep);
    } else if (*check) {
      rep.add("command", "check");
      code = cmd_check(o, text, rep);
    } else {
      rep.add("command", "simulate");
      code = cmd_simulate(o, text, rep);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    rep.add("error", "io");
    code = kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    rep.add("error", "usage");
    code = kExitUsage;
  } catch (const ParseError& e) {
    err << o.file << ":" << e.what() << "\n";
    rep.add("error", "parse");
    code = kExitNegative;
  } catch (const InvalidTree& e) {
    err << "error: " << e.what() << "\n";
    rep.add("status", "invalid");
    code = kExitNegative;
  } catch (const SimulationError& e) {
    err << "error: " << e.what();
    rep.add("error", "simulation");
    code = kExitNegative;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    rep.add("error", "model");
    code = kExitNegative;
  }
  if (!o.kv_only) out << text.str();
  rep.add("exit", code);
  rep.print(out);
  return code;
}

}  // namespace rft
