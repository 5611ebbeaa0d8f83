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

#include <algorithm>

#include "rft/errors.hpp"
#include "rft/iosa.hpp"
#include "rft/symbolic.hpp"
#include "support.hpp"

namespace rft {
namespace {

// Two states, one clock: a timed output from 0 to 1 and an input back.
IosaAutomaton two_state() {
  IosaAutomaton a;
  a.name = "M";
  a.state_names = {"s0", "s1"};
  a.actions = {{"go", Direction::kOutput, false}, {"back", Direction::kInput, false}};
  a.clocks = {{"x", Distribution::exponential(1)}};
  a.initial_clocks = {0};
  a.transitions = {{0, {0}, 0, {}, 1},
                   {1, {}, 1, {0}, 0},
                   {0, {}, 1, {}, 0}};
  return a;
}

bool has_item(const std::vector<ConstraintViolation>& vs, char item) {
  return std::any_of(vs.begin(), vs.end(), [&](const auto& v) { return v.item == item; });
}

TEST(Def1, WellFormedAutomatonPasses) { EXPECT_TRUE(check_def1(two_state()).empty()); }

TEST(Def1, InputGuardedByClock) {
  auto a = two_state();
  a.transitions[1].enabling = {0};
  EXPECT_TRUE(has_item(check_def1(a), 'a'));
}

TEST(Def1, TimedOutputNeedsOneClock) {
  auto a = two_state();
  a.transitions[0].enabling = {};
  EXPECT_TRUE(has_item(check_def1(a), 'b'));
}

TEST(Def1, ClockEnablesOneTransition) {
  auto a = two_state();
  a.actions.push_back({"alt", Direction::kOutput, false});
  a.transitions.push_back({0, {0}, 2, {}, 0});
  EXPECT_TRUE(has_item(check_def1(a), 'c'));
}

TEST(Def1, InputEnabledEverywhere) {
  auto a = two_state();
  a.transitions.pop_back();
  EXPECT_TRUE(has_item(check_def1(a), 'd'));
}

TEST(Def1, InputDeterministic) {
  auto a = two_state();
  a.transitions.push_back({0, {}, 1, {}, 1});
  EXPECT_TRUE(has_item(check_def1(a), 'e'));
}

TEST(Def1, ClockMustBeActiveWhenEnabled) {
  auto a = two_state();
  a.transitions[1].resets = {};  // s1 -> s0 no longer sets x
  EXPECT_TRUE(has_item(check_def1(a), 'f'));
  auto b = two_state();
  b.initial_clocks = {};
  EXPECT_TRUE(has_item(check_def1(b), 'f'));
}

TEST(Def1, TemplatesAreWellFormed) {
  for (const auto& path : testing::files_in("tests/templates", ".iosa")) {
    const auto mods = parse_model(testing::slurp(path));
    for (const auto& m : mods) {
      Alphabet alpha = build_alphabet(mods);
      const auto e = expand(m, alpha);
      EXPECT_TRUE(check_def1(e.automaton).empty()) << path << " " << m.name;
    }
  }
}

TEST(Compose, SynchronisesOutputWithInputs) {
  const auto mods = parse_model(testing::read_source("tests/corpus/violator.iosa"));
  const auto ex = testing::expand_all(mods);
  std::vector<IosaAutomaton> parts;
  for (const auto& e : ex) parts.push_back(e.automaton);
  const IosaAutomaton all = compose_all(parts);
  // P, Q each flip once; R records whichever came first.
  EXPECT_EQ(all.num_states(), 5);
  EXPECT_TRUE(closed(all));
  EXPECT_TRUE(closed(parts));
  EXPECT_TRUE(check_def1(all).empty());
  const int c = all.action_index("c");
  ASSERT_GE(c, 0);
  EXPECT_TRUE(all.actions[c].is_output());
  EXPECT_TRUE(all.actions[c].urgent);
}

TEST(Compose, OpenNetworkIsNotClosed) {
  const auto mods = parse_model(testing::read_source("tests/templates/and.iosa"));
  const auto ex = testing::expand_all(mods);
  EXPECT_FALSE(closed(ex.front().automaton));
}

TEST(Compose, RejectsSharedOutputsAndClocks) {
  auto a = two_state();
  auto b = two_state();
  b.name = "N";
  b.clocks[0].name = "y";
  EXPECT_THROW(compose(a, b), IncompatibleComponents);  // both output "go"
  b.actions[0].name = "go2";
  b.clocks[0].name = "x";
  EXPECT_THROW(compose(a, b), IncompatibleComponents);
  b.clocks[0].name = "y";
  EXPECT_NO_THROW(compose(a, b));
}

TEST(Compose, RejectsUrgencyMismatch) {
  auto a = two_state();
  auto b = two_state();
  b.name = "N";
  b.clocks[0].name = "y";
  b.actions[0].name = "go2";
  b.actions[1] = {"go", Direction::kInput, true};
  EXPECT_THROW(compose(a, b), IncompatibleComponents);
}

TEST(Compose, StablePruningDropsTimedMovesFromUnstableStates) {
  // BE with its inform slot: after fl_A the state enables f_A!! and r_A.
  const auto mods = parse_model(testing::read_source("tests/templates/be.iosa"));
  Alphabet alpha = build_alphabet(mods);
  const IosaAutomaton be = expand(mods.front(), alpha).automaton;
  IosaAutomaton repair;
  repair.name = "Rep";
  repair.state_names = {"pending", "done"};
  repair.actions = {{"r_A", Direction::kOutput, true}};
  repair.transitions = {{0, {}, 0, {}, 1}};
  const IosaAutomaton full = compose(be, repair);
  const IosaAutomaton pruned = compose(be, repair, Pruning::kStableTimed);
  EXPECT_LT(pruned.transitions.size(), full.transitions.size());
  const auto succ = pruned.outgoing();
  for (const auto& t : pruned.transitions) {
    if (pruned.actions[t.action].urgent) continue;
    EXPECT_TRUE(pruned.stable(succ[t.source])) << pruned.state_names[t.source];
  }
}

TEST(Iosa, DumpMentionsEveryState) {
  const auto a = two_state();
  const std::string d = dump(a);
  EXPECT_NE(d.find("s0"), std::string::npos);
  EXPECT_NE(d.find("s1"), std::string::npos);
  EXPECT_EQ(format_clock_set(a, {0}), "{x}");
}

}  // namespace
}  // namespace rft
