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
#ifndef RFT_SIMULATOR_HPP
#define RFT_SIMULATOR_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "rft/iosa.hpp"
#include "rft/rng.hpp"
#include "rft/symbolic.hpp"

namespace rft {

/// How simultaneously enabled urgent outputs are ordered.  Weak determinism
/// makes the choice irrelevant for the measures; the probe checks that.
enum class TieBreak { kLex, kRevLex, kRandom };

enum class Metric { kUnreliability, kUnavailability };

std::string_view tiebreak_name(TieBreak t);
std::string_view metric_name(Metric m);

/// A closed network of expanded modules, ready to simulate.  If a module
/// named TopMonitor with a boolean `failed` exists, it defines the top event.
class Network {
 public:
  explicit Network(const std::vector<SymbolicModule>& modules);

  struct Module {
    std::string name;
    IosaAutomaton automaton;
    std::vector<std::vector<Move>> moves;  // per state
    int clock_offset = 0;
  };
  struct Sync {
    int module = 0;
    int action = 0;  // local index
  };
  struct GlobalAction {
    std::string name;
    bool urgent = false;
    int producer = -1;  // module index, -1 if nobody emits it
    std::vector<Sync> listeners;
    int rank = 0;  // position in name order
  };

  const std::vector<Module>& modules() const { return modules_; }
  const std::vector<GlobalAction>& actions() const { return actions_; }
  int global_action(int module, int local) const { return local_to_global_[module][local]; }
  int num_clocks() const { return num_clocks_; }
  const std::string& clock_name(int global) const { return clock_names_[global]; }
  int clock_rank(int global) const { return clock_rank_[global]; }
  const Distribution& clock_law(int global) const { return clock_laws_[global]; }

  bool has_monitor() const { return monitor_ >= 0; }
  bool failed(const std::vector<int>& state) const {
    return monitor_ >= 0 && monitor_failed_[state[monitor_]];
  }

 private:
  std::vector<Module> modules_;
  std::vector<GlobalAction> actions_;
  std::vector<std::vector<int>> local_to_global_;
  int num_clocks_ = 0;
  std::vector<std::string> clock_names_;
  std::vector<int> clock_rank_;
  std::vector<Distribution> clock_laws_;
  int monitor_ = -1;
  std::vector<char> monitor_failed_;
};

struct TraceEvent {
  double time = 0;
  std::string module;
  std::string action;
  bool urgent = false;
  bool tie = false;  // an exact tie was broken to pick this event
};

/// `t=<time> module=<name> action=<label> kind=urgent|timed`, plus
/// ` note=tie` when a tie was broken.
std::string format_trace_event(const TraceEvent& e);

/// One sequential run.  Each clock draws from its own substream of
/// (seed, run), and branch and tie choices from another, so the k-th sample of
/// a clock does not depend on the interleaving of the others.
class Simulation {
 public:
  Simulation(const Network& net, std::uint64_t seed, std::uint64_t run, TieBreak tiebreak);

  double now() const { return now_; }
  const std::vector<int>& state() const { return state_; }
  bool failed() const { return net_.failed(state_); }
  /// Absolute expiry time of a global clock (infinity if never set).
  double expiry(int clock) const { return expiry_[clock]; }
  /// Overrides a clock's expiry; used to force ties in tests.
  void force_expiry(int clock, double time) { expiry_[clock] = time; }

  /// Fires one event.  Urgent outputs first; otherwise the timed output of
  /// the earliest clock, provided it expires no later than `horizon`.
  /// Returns false (and moves time to `horizon`) when nothing fires in time.
  /// Throws SimulationError on deadlock or urgent livelock.
  bool step(double horizon = std::numeric_limits<double>::infinity());

  void set_trace(std::function<void(const TraceEvent&)> sink) { sink_ = std::move(sink); }

  /// Human-readable module states, for error reports.
  std::string describe() const;

 private:
  void fire(int global, int producer_module, const Move& move, bool urgent, bool tie);
  int pick_outcome(const Move& m);

  const Network& net_;
  TieBreak tiebreak_;
  std::vector<int> state_;
  std::vector<double> expiry_;
  std::vector<CounterRng> clock_rng_;
  CounterRng choice_rng_;
  double now_ = 0;
  int cascade_ = 0;
  std::function<void(const TraceEvent&)> sink_;
};

struct SimOptions {
  double horizon = 1000;
  std::uint64_t runs = 1000;
  std::uint64_t seed = 1;
  double confidence = 0.95;
  TieBreak tiebreak = TieBreak::kLex;
  unsigned jobs = 1;
};

struct SimEstimate {
  Metric metric = Metric::kUnreliability;
  double estimate = 0;
  double half_width = 0;
  double confidence = 0.95;
  std::uint64_t runs = 0;
  std::uint64_t seed = 0;
  double horizon = 0;
  TieBreak tiebreak = TieBreak::kLex;
  double wall_seconds = 0;
};

/// Fraction of runs whose top event occurs at some t <= horizon, with a
/// normal-approximation interval.
SimEstimate estimate_unreliability(const Network& net, const SimOptions& opt);

/// Mean over runs of the fraction of [0, horizon] spent with the top event
/// true, with a normal-approximation interval.
SimEstimate estimate_unavailability(const Network& net, const SimOptions& opt);

SimEstimate estimate(const Network& net, Metric metric, const SimOptions& opt);

/// The events of one run, exactly as the estimators see them: unreliability
/// runs stop at the first top failure, unavailability runs at the horizon.
std::vector<TraceEvent> record_trace(const Network& net, Metric metric, const SimOptions& opt,
                                     std::uint64_t run = 0);

/// Two-sided standard normal quantile for `confidence` (1.96 at 0.95).
double normal_quantile(double confidence);

struct ProbeReport {
  std::vector<SimEstimate> estimates;  // one per policy, in the order given
  double max_difference = 0;
  bool intervals_overlap = true;
  bool reproducible = true;  // same seed and policy gave identical traces
};

/// Reruns the estimate under every policy with the same seed; also replays
/// run 0 twice per policy and compares the traces.
ProbeReport order_invariance_probe(const Network& net, Metric metric, const SimOptions& opt,
                                   const std::vector<TieBreak>& policies = {
                                       TieBreak::kLex, TieBreak::kRevLex, TieBreak::kRandom});

}  // namespace rft

#endif  // RFT_SIMULATOR_HPP
