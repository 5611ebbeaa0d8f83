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
#include <gtest/gtest.h>

#include <cmath>

#include "rft/compiler.hpp"
#include "rft/errors.hpp"
#include "rft/fault_tree.hpp"
#include "rft/simulator.hpp"
#include "support.hpp"

namespace rft {
namespace {

Network network_of_tree(const std::string& rft_text) {
  return Network(closed_model(compile_tree(parse_rft(rft_text))));
}

Network corpus_network(const std::string& file) {
  return network_of_tree(testing::read_source("tests/corpus/" + file));
}

int clock_id(const Network& net, const std::string& name) {
  for (int c = 0; c < net.num_clocks(); ++c)
    if (net.clock_name(c) == name) return c;
  ADD_FAILURE() << "no clock " << name;
  return 0;
}

std::vector<TraceEvent> run_until(Simulation& sim, double horizon) {
  std::vector<TraceEvent> events;
  sim.set_trace([&](const TraceEvent& e) { events.push_back(e); });
  while (sim.step(horizon)) {
  }
  return events;
}

TEST(Simulator, FailureSignalsShareTheFailureInstant) {
  const Network net = corpus_network("be_single.rft");
  Simulation sim(net, 1, 0, TieBreak::kLex);
  std::vector<TraceEvent> events;
  sim.set_trace([&](const TraceEvent& e) { events.push_back(e); });
  while (!sim.failed()) ASSERT_TRUE(sim.step());
  ASSERT_GE(events.size(), 2u);
  const auto fl = std::find_if(events.begin(), events.end(),
                               [](const TraceEvent& e) { return e.action.rfind("fl_", 0) == 0; });
  ASSERT_NE(fl, events.end());
  EXPECT_FALSE(fl->urgent);
  for (auto it = fl + 1; it != events.end(); ++it) {
    EXPECT_EQ(it->time, fl->time) << it->action;
    EXPECT_TRUE(it->urgent) << it->action;
  }
}

TEST(Simulator, TraceTimesAreMonotone) {
  const Network net = corpus_network("mixed.rft");
  Simulation sim(net, 5, 3, TieBreak::kRandom);
  const auto events = run_until(sim, 500);
  ASSERT_GT(events.size(), 10u);
  for (std::size_t i = 1; i < events.size(); ++i) EXPECT_LE(events[i - 1].time, events[i].time);
  EXPECT_EQ(sim.now(), 500);
}

TEST(Simulator, ForcedClockTieIsFlagged) {
  const Network net = corpus_network("and2.rft");
  Simulation sim(net, 1, 0, TieBreak::kLex);
  sim.force_expiry(clock_id(net, "A.fc"), 0.5);
  sim.force_expiry(clock_id(net, "B.fc"), 0.5);
  std::vector<TraceEvent> events;
  sim.set_trace([&](const TraceEvent& e) { events.push_back(e); });
  ASSERT_TRUE(sim.step());
  ASSERT_EQ(events.size(), 1u);
  EXPECT_TRUE(events[0].tie);
  EXPECT_EQ(events[0].action, "fl_A");  // lower clock rank wins
  EXPECT_NE(format_trace_event(events[0]).find("note=tie"), std::string::npos);
  events.clear();
  while (events.empty() || events.back().urgent || events.back().action != "fl_B") sim.step();
  EXPECT_EQ(events.back().time, 0.5);
}

TEST(Simulator, TraceFormat) {
  const TraceEvent e{0.25, "A", "fl_A", false, false};
  EXPECT_EQ(format_trace_event(e), "t=0.25 module=A action=fl_A kind=timed");
  const TraceEvent u{1.0 / 3, "T", "f_T", true, true};
  EXPECT_EQ(format_trace_event(u),
            "t=0.33333333333333331 module=T action=f_T kind=urgent note=tie");
}

// Three elements share one repair box; C is under repair while B and then
// A fail.  Returns the element repaired after C.
std::string next_repair(const std::string& policy) {
  const Network net = network_of_tree("toplevel T;\nT and A B C;\n"
                                      "A be fail=exponential(1) repair=exponential(1);\n"
                                      "B be fail=exponential(1) repair=exponential(1);\n"
                                      "C be fail=exponential(1) repair=exponential(1);\n"
                                      "R rbox " + policy + " A B C;\n");
  Simulation sim(net, 1, 0, TieBreak::kLex);
  sim.force_expiry(clock_id(net, "C.fc"), 1);
  sim.force_expiry(clock_id(net, "B.fc"), 2);
  sim.force_expiry(clock_id(net, "A.fc"), 3);
  std::vector<TraceEvent> events;
  sim.set_trace([&](const TraceEvent& e) { events.push_back(e); });
  bool held = false;
  while (sim.step(1000)) {
    if (!held && events.back().action == "r_C") {
      sim.force_expiry(clock_id(net, "C.rc"), 100);
      held = true;
    }
    if (events.back().action == "r_A" || events.back().action == "r_B") return events.back().action;
  }
  return "";
}

TEST(Simulator, PriorityRepairBoxServesFirstInputFirst) {
  EXPECT_EQ(next_repair("prio"), "r_A");
  EXPECT_EQ(next_repair("fcfs"), "r_B");
}

TEST(Simulator, ZeroHorizonGivesZero) {
  const Network net = corpus_network("be_single.rft");
  SimOptions opt;
  opt.horizon = 0;
  opt.runs = 10;
  EXPECT_EQ(estimate(net, Metric::kUnreliability, opt).estimate, 0.0);
  EXPECT_EQ(estimate(net, Metric::kUnavailability, opt).estimate, 0.0);
}

TEST(Simulator, SameSeedSameResultAcrossThreadCounts) {
  const Network net = corpus_network("and_shared_rbox.rft");
  SimOptions opt;
  opt.horizon = 50;
  opt.runs = 200;
  opt.seed = 99;
  const SimEstimate one = estimate(net, Metric::kUnavailability, opt);
  opt.jobs = 3;
  const SimEstimate three = estimate(net, Metric::kUnavailability, opt);
  EXPECT_EQ(one.estimate, three.estimate);
  EXPECT_EQ(one.half_width, three.half_width);
  opt.seed = 100;
  EXPECT_NE(estimate(net, Metric::kUnavailability, opt).estimate, one.estimate);
}

TEST(Simulator, TracesReplayExactly) {
  const Network net = corpus_network("sg_2x1.rft");
  SimOptions opt;
  opt.horizon = 200;
  opt.tiebreak = TieBreak::kRandom;
  const auto a = record_trace(net, Metric::kUnavailability, opt, 4);
  const auto b = record_trace(net, Metric::kUnavailability, opt, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_EQ(format_trace_event(a[i]), format_trace_event(b[i]));
}

TEST(Simulator, UnreliabilityTraceStopsAtTopFailure) {
  const Network net = corpus_network("or2.rft");
  SimOptions opt;
  opt.horizon = 1e6;
  const auto t = record_trace(net, Metric::kUnreliability, opt);
  ASSERT_FALSE(t.empty());
  EXPECT_EQ(t.back().action, "f_T");
}

TEST(Simulator, DeadlockAndLivelockAreErrors) {
  const Network dead(parse_model("module M\n s : bool init false;\n [!!] !s -> (s'=true);\nendmodule\n"));
  Simulation a(dead, 1, 0, TieBreak::kLex);
  EXPECT_TRUE(a.step());
  try {
    a.step();
    FAIL() << "no deadlock";
  } catch (const SimulationError& e) {
    EXPECT_EQ(e.kind(), SimulationError::Kind::kDeadlock);
  }
  const Network live(parse_model("module M\n s : bool init false;\n [!!] true -> (s'=!s);\nendmodule\n"));
  Simulation b(live, 1, 0, TieBreak::kLex);
  try {
    while (b.step()) {
    }
    FAIL() << "no livelock";
  } catch (const SimulationError& e) {
    EXPECT_EQ(e.kind(), SimulationError::Kind::kUrgentLivelock);
  }
}

TEST(Simulator, OpenInputIsAModelError) {
  try {
    Network net(parse_model("module M\n [a?] -> ;\nendmodule\n"));
    FAIL() << "no error";
  } catch (const SimulationError& e) {
    EXPECT_EQ(e.kind(), SimulationError::Kind::kModel);
  }
}

TEST(Simulator, EstimatorRejectsBadOptions) {
  const Network net = corpus_network("be_single.rft");
  SimOptions opt;
  opt.runs = 1;
  EXPECT_THROW(estimate(net, Metric::kUnreliability, opt), std::invalid_argument);
  opt.runs = 10;
  opt.confidence = 1.0;
  EXPECT_THROW(estimate(net, Metric::kUnreliability, opt), std::invalid_argument);
  opt.confidence = 0.95;
  opt.horizon = -1;
  EXPECT_THROW(estimate(net, Metric::kUnreliability, opt), std::invalid_argument);
}

TEST(Simulator, NormalQuantile) {
  EXPECT_NEAR(normal_quantile(0.95), 1.959963984540054, 1e-12);
  EXPECT_NEAR(normal_quantile(0.99), 2.5758293035489, 1e-12);
}

TEST(Simulator, ProbeAgreesAcrossPolicies) {
  const Network net = corpus_network("sg_2x1.rft");
  SimOptions opt;
  opt.horizon = 100;
  opt.runs = 400;
  const ProbeReport r = order_invariance_probe(net, Metric::kUnavailability, opt);
  ASSERT_EQ(r.estimates.size(), 3u);
  EXPECT_TRUE(r.intervals_overlap);
  EXPECT_TRUE(r.reproducible);
}

}  // namespace
}  // namespace rft
