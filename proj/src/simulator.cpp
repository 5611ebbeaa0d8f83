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
#include "rft/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <deque>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include <boost/math/distributions/normal.hpp>
#include <fmt/format.h>

#include "rft/compiler.hpp"
#include "rft/errors.hpp"

namespace rft {

std::string_view tiebreak_name(TieBreak t) {
  switch (t) {
    case TieBreak::kLex: return "lex";
    case TieBreak::kRevLex: return "revlex";
    case TieBreak::kRandom: return "random";
  }
  return "?";
}

std::string_view metric_name(Metric m) {
  return m == Metric::kUnreliability ? "unreliability" : "unavailability";
}

Network::Network(const std::vector<SymbolicModule>& modules) {
  const Alphabet alphabet = build_alphabet(modules);
  std::map<std::string, int> global;
  for (const auto& [label, info] : alphabet) global.emplace(label, 0);
  int rank = 0;
  for (auto& [label, id] : global) {
    id = rank++;
    const LabelInfo& info = alphabet.at(label);
    actions_.push_back(GlobalAction{label, info.urgent, -1, {}, id});
  }

  std::vector<std::pair<std::string, int>> clock_order;
  for (const auto& sm : modules) {
    ExpandedModule ex = expand(sm, alphabet);
    Module m;
    m.name = sm.name;
    m.automaton = std::move(ex.automaton);
    m.clock_offset = num_clocks_;
    const auto out = m.automaton.outgoing();
    m.moves.resize(m.automaton.num_states());
    for (int s = 0; s < m.automaton.num_states(); ++s) m.moves[s] = m.automaton.moves(out[s]);
    const int index = static_cast<int>(modules_.size());
    std::vector<int> map;
    for (int a = 0; a < static_cast<int>(m.automaton.actions.size()); ++a) {
      const Action& act = m.automaton.actions[a];
      auto it = global.find(act.name);
      if (it == global.end()) {
        // Silent labels are not in the alphabet.
        it = global.emplace(act.name, static_cast<int>(actions_.size())).first;
        actions_.push_back(GlobalAction{act.name, act.urgent, -1, {}, 0});
      }
      GlobalAction& g = actions_[it->second];
      if (act.is_output()) {
        g.producer = index;
      } else {
        g.listeners.push_back(Sync{index, a});
      }
      map.push_back(it->second);
    }
    local_to_global_.push_back(std::move(map));
    for (const auto& c : m.automaton.clocks) {
      clock_order.emplace_back(c.name, num_clocks_);
      clock_names_.push_back(c.name);
      clock_laws_.push_back(c.law);
      ++num_clocks_;
    }
    if (sm.name == kMonitorModule) {
      const int slot = ex.slot(kMonitorVar);
      if (slot >= 0) {
        monitor_ = index;
        for (const auto& val : ex.valuations) monitor_failed_.push_back(val[slot] != 0);
      }
    }
    modules_.push_back(std::move(m));
  }
  // Silent labels were appended out of order; rank by name again.
  std::vector<int> order(actions_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return actions_[x].name < actions_[y].name; });
  for (std::size_t r = 0; r < order.size(); ++r) actions_[order[r]].rank = static_cast<int>(r);

  for (const auto& g : actions_) {
    if (g.producer < 0 && !g.listeners.empty()) {
      throw SimulationError(SimulationError::Kind::kModel,
                            "input '" + g.name + "' has no producer; the model is not closed");
    }
  }
  std::sort(clock_order.begin(), clock_order.end());
  clock_rank_.resize(num_clocks_);
  for (std::size_t r = 0; r < clock_order.size(); ++r) {
    clock_rank_[clock_order[r].second] = static_cast<int>(r);
  }
}

std::string format_trace_event(const TraceEvent& e) {
  return fmt::format("t={:.17g} module={} action={} kind={}{}", e.time, e.module, e.action,
                     e.urgent ? "urgent" : "timed", e.tie ? " note=tie" : "");
}

Simulation::Simulation(const Network& net, std::uint64_t seed, std::uint64_t run,
                       TieBreak tiebreak)
    : net_(net),
      tiebreak_(tiebreak),
      expiry_(net.num_clocks(), std::numeric_limits<double>::infinity()),
      choice_rng_(derive_stream_key(seed, run, 0)) {
  clock_rng_.reserve(net.num_clocks());
  for (int c = 0; c < net.num_clocks(); ++c) {
    clock_rng_.emplace_back(derive_stream_key(seed, run, static_cast<std::uint64_t>(c) + 1));
  }
  for (const auto& m : net.modules()) {
    state_.push_back(m.automaton.initial_state);
    for (int c : m.automaton.initial_clocks) {
      const int g = m.clock_offset + c;
      expiry_[g] = net.clock_law(g).sample(clock_rng_[g]);
    }
  }
}

int Simulation::pick_outcome(const Move& m) {
  if (m.outcomes.size() == 1) return m.outcomes.front().first;
  double u = choice_rng_.uniform_open();
  for (const auto& [target, p] : m.outcomes) {
    if (u < p) return target;
    u -= p;
  }
  return m.outcomes.back().first;
}

std::string Simulation::describe() const {
  std::string out;
  for (std::size_t i = 0; i < state_.size(); ++i) {
    const auto& m = net_.modules()[i];
    out += fmt::format("  {} {}\n", m.name, m.automaton.state_names[state_[i]]);
  }
  return out;
}

void Simulation::fire(int global, int producer_module, const Move& move, bool urgent, bool tie) {
  const auto& g = net_.actions()[global];
  // Resolve every participant on the pre-state, then commit.
  struct Effect {
    int module;
    const Move* move;
  };
  std::vector<Effect> effects{{producer_module, &move}};
  for (const auto& l : g.listeners) {
    const auto& mod = net_.modules()[l.module];
    const Move* found = nullptr;
    for (const Move& mv : mod.moves[state_[l.module]]) {
      if (mv.action == l.action) {
        found = &mv;
        break;
      }
    }
    if (!found) {
      throw SimulationError(SimulationError::Kind::kModel,
                            fmt::format("module {} cannot take input '{}' at t={}\n{}", mod.name,
                                        g.name, now_, describe()));
    }
    effects.push_back({l.module, found});
  }
  for (const auto& e : effects) {
    const int offset = net_.modules()[e.module].clock_offset;
    state_[e.module] = pick_outcome(*e.move);
    for (int c : e.move->resets) {
      const int gc = offset + c;
      expiry_[gc] = now_ + net_.clock_law(gc).sample(clock_rng_[gc]);
    }
  }
  if (sink_) {
    sink_(TraceEvent{now_, net_.modules()[producer_module].name, g.name, urgent, tie});
  }
}

bool Simulation::step(double horizon) {
  const auto& mods = net_.modules();
  // Urgent outputs first, at zero time.
  int best = -1, best_module = -1, count = 0;
  const Move* best_move = nullptr;
  for (std::size_t i = 0; i < mods.size(); ++i) {
    const auto& a = mods[i].automaton;
    for (const Move& mv : mods[i].moves[state_[i]]) {
      const Action& act = a.actions[mv.action];
      if (!act.urgent || !act.is_output()) continue;
      const int g = net_.global_action(static_cast<int>(i), mv.action);
      ++count;
      bool take = best < 0;
      if (!take) {
        const int r = net_.actions()[g].rank, rb = net_.actions()[best].rank;
        switch (tiebreak_) {
          case TieBreak::kLex: take = r < rb; break;
          case TieBreak::kRevLex: take = r > rb; break;
          case TieBreak::kRandom:
            // Reservoir sampling over candidates in module order.
            take = choice_rng_.uniform_open() * count < 1.0;
            break;
        }
      }
      if (take) {
        best = g;
        best_module = static_cast<int>(i);
        best_move = &mv;
      }
    }
  }
  if (best >= 0) {
    if (++cascade_ > 10 * static_cast<int>(mods.size())) {
      throw SimulationError(SimulationError::Kind::kUrgentLivelock,
                            fmt::format("urgent cascade exceeds {} firings at t={}\n{}",
                                        10 * mods.size(), now_, describe()));
    }
    fire(best, best_module, *best_move, true, false);
    return true;
  }

  double when = std::numeric_limits<double>::infinity();
  int clock = -1;
  bool tie = false;
  for (std::size_t i = 0; i < mods.size(); ++i) {
    const auto& a = mods[i].automaton;
    for (const Move& mv : mods[i].moves[state_[i]]) {
      const Action& act = a.actions[mv.action];
      if (act.urgent || !act.is_output() || mv.enabling.empty()) continue;
      const int c = mods[i].clock_offset + mv.enabling.front();
      const double t = std::max(expiry_[c], now_);
      if (clock >= 0 && t == when) {
        tie = true;
        if (net_.clock_rank(c) > net_.clock_rank(clock)) continue;
      } else if (t > when) {
        continue;
      } else {
        tie = false;
      }
      when = t;
      clock = c;
      best_module = static_cast<int>(i);
      best_move = &mv;
    }
  }
  if (clock < 0 || std::isinf(when)) {
    throw SimulationError(SimulationError::Kind::kDeadlock,
                          fmt::format("no urgent output and no active clock at t={}\n{}", now_,
                                      describe()));
  }
  if (when > horizon) {
    now_ = horizon;
    return false;
  }
  now_ = when;
  cascade_ = 0;
  fire(net_.global_action(best_module, best_move->action), best_module, *best_move, false, tie);
  return true;
}

namespace {

double run_value(const Network& net, Metric metric, const SimOptions& opt, std::uint64_t run,
                 const std::function<void(const TraceEvent&)>& sink = {}) {
  Simulation sim(net, opt.seed, run, opt.tiebreak);
  if (sink) sim.set_trace(sink);
  if (metric == Metric::kUnreliability) {
    for (;;) {
      if (sim.failed()) return 1.0;
      if (!sim.step(opt.horizon)) return 0.0;
    }
  }
  if (opt.horizon == 0) {
    // Degenerate window: the state left after every instant-zero event.
    while (sim.step(0)) {
    }
    return sim.failed() ? 1.0 : 0.0;
  }
  double down = 0, prev = 0;
  for (;;) {
    const bool failed = sim.failed();
    const bool fired = sim.step(opt.horizon);
    if (failed) down += sim.now() - prev;
    prev = sim.now();
    if (!fired) return down / opt.horizon;
  }
}

}  // namespace

double normal_quantile(double confidence) {
  boost::math::normal_distribution<double> n;
  return boost::math::quantile(n, 0.5 + confidence / 2);
}

SimEstimate estimate(const Network& net, Metric metric, const SimOptions& opt) {
  if (opt.runs < 2) throw std::invalid_argument("at least 2 runs are needed");
  if (!(opt.horizon >= 0) || std::isinf(opt.horizon)) {
    throw std::invalid_argument("horizon must be finite and non-negative");
  }
  if (!(opt.confidence > 0 && opt.confidence < 1)) {
    throw std::invalid_argument("confidence must lie in (0, 1)");
  }
  if (!net.has_monitor()) {
    throw SimulationError(SimulationError::Kind::kModel,
                          std::string("no ") + std::string(kMonitorModule) + " module");
  }
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> values(opt.runs);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::uint64_t error_run = 0;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::uint64_t r; (r = next.fetch_add(1)) < opt.runs;) {
      try {
        values[r] = run_value(net, metric, opt, r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error || r < error_run) {
          error = std::current_exception();
          error_run = r;
        }
        next = opt.runs;
      }
    }
  };
  const unsigned jobs = std::max(1u, opt.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) {
    try {
      std::rethrow_exception(error);
    } catch (const SimulationError& e) {
      // Replay the failing run to report how it got there.
      std::deque<std::string> tail;
      try {
        run_value(net, metric, opt, error_run, [&](const TraceEvent& ev) {
          tail.push_back(format_trace_event(ev));
          if (tail.size() > 20) tail.pop_front();
        });
      } catch (const SimulationError&) {
      }
      std::string msg = fmt::format("run {}: {}", error_run, e.what());
      if (!tail.empty()) msg += "last events:\n";
      for (const auto& line : tail) msg += "  " + line + "\n";
      throw SimulationError(e.kind(), msg);
    }
  }
  // Fixed summation order keeps the result independent of the job count.
  double sum = 0;
  for (double v : values) sum += v;
  const double n = static_cast<double>(opt.runs);
  const double mean = sum / n;
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  SimEstimate est;
  est.metric = metric;
  est.estimate = mean;
  est.half_width = normal_quantile(opt.confidence) * std::sqrt(ss / (n - 1) / n);
  est.confidence = opt.confidence;
  est.runs = opt.runs;
  est.seed = opt.seed;
  est.horizon = opt.horizon;
  est.tiebreak = opt.tiebreak;
  est.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return est;
}

SimEstimate estimate_unreliability(const Network& net, const SimOptions& opt) {
  return estimate(net, Metric::kUnreliability, opt);
}

SimEstimate estimate_unavailability(const Network& net, const SimOptions& opt) {
  return estimate(net, Metric::kUnavailability, opt);
}

std::vector<TraceEvent> record_trace(const Network& net, Metric metric, const SimOptions& opt,
                                     std::uint64_t run) {
  std::vector<TraceEvent> trace;
  run_value(net, metric, opt, run, [&](const TraceEvent& e) { trace.push_back(e); });
  return trace;
}

ProbeReport order_invariance_probe(const Network& net, Metric metric, const SimOptions& opt,
                                   const std::vector<TieBreak>& policies) {
  ProbeReport rep;
  for (TieBreak p : policies) {
    SimOptions o = opt;
    o.tiebreak = p;
    rep.estimates.push_back(estimate(net, metric, o));
    auto once = record_trace(net, metric, o);
    auto twice = record_trace(net, metric, o);
    bool same = once.size() == twice.size();
    for (std::size_t i = 0; same && i < once.size(); ++i) {
      same = format_trace_event(once[i]) == format_trace_event(twice[i]);
    }
    rep.reproducible = rep.reproducible && same;
  }
  for (std::size_t i = 0; i < rep.estimates.size(); ++i) {
    for (std::size_t j = i + 1; j < rep.estimates.size(); ++j) {
      const auto& x = rep.estimates[i];
      const auto& y = rep.estimates[j];
      const double diff = std::abs(x.estimate - y.estimate);
      rep.max_difference = std::max(rep.max_difference, diff);
      if (diff > x.half_width + y.half_width) rep.intervals_overlap = false;
    }
  }
  return rep;
}

}  // namespace rft
