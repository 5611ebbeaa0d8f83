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

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "rft/cli.hpp"
#include "rft/symbolic.hpp"
#include "support.hpp"

namespace rft {
namespace {

struct Result {
  int code;
  std::string out, err;
  std::map<std::string, std::string> kv;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  // Parse the last --- block.
  std::istringstream in(r.out);
  std::string line;
  bool inside = false;
  std::map<std::string, std::string> block;
  while (std::getline(in, line)) {
    if (line == "---") {
      if (inside) r.kv = block;
      inside = !inside;
      block.clear();
      continue;
    }
    const auto eq = line.find('=');
    if (inside && eq != std::string::npos) block[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return r;
}

std::string corpus(const std::string& f) { return testing::source_path("tests/corpus/" + f).string(); }

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("rftiosa_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST(Cli, ValidateAcceptsCorpusTree) {
  const Result r = run({"validate", corpus("and2.rft")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.kv.at("status"), "valid");
  EXPECT_EQ(r.kv.at("exit"), "0");
}

TEST_F(TempDir, ValidateReportsViolationsAndParseErrors) {
  const auto bad = dir_ / "bad.rft";
  std::ofstream(bad) << "toplevel T;\nT and A;\nA be fail=exponential(1) repair=exponential(1);\n"
                        "R rbox prio A;\nQ rbox prio A;\n";
  Result r = run({"validate", bad.string()});
  EXPECT_EQ(r.code, kExitNegative);
  EXPECT_NE(r.kv.at("violations"), "0");
  const auto broken = dir_ / "broken.rft";
  std::ofstream(broken) << "toplevel T;\nT and A";
  r = run({"validate", broken.string()});
  EXPECT_EQ(r.code, kExitNegative);
  EXPECT_EQ(r.kv.at("error"), "parse");
  EXPECT_NE(r.err.find("2:8"), std::string::npos);
}

TEST(Cli, MissingFileIsAnIoError) {
  const Result r = run({"validate", "/nonexistent/tree.rft"});
  EXPECT_EQ(r.code, kExitIo);
  EXPECT_EQ(r.kv.at("error"), "io");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"simulate", corpus("be_single.rft"), "--runs", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"simulate", corpus("be_single.rft"), "--metric", "mttf"}).code, kExitUsage);
  EXPECT_EQ(run({"simulate", corpus("be_single.rft"), "--confidence", "1.5"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST_F(TempDir, CompileWritesAParsableModel) {
  const auto out = dir_ / "mixed.iosa";
  const Result r = run({"compile", corpus("mixed.rft"), "-o", out.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto mods = parse_model(testing::slurp(out));
  EXPECT_GT(mods.size(), 5u);
  EXPECT_FALSE(std::filesystem::exists(out.string() + ".tmp"));
  const Result c = run({"check", out.string()});
  EXPECT_EQ(c.code, kExitOk);
  EXPECT_EQ(c.kv.at("weakly_deterministic"), "true");
}

TEST_F(TempDir, CompileIntoMissingDirectoryIsAnIoError) {
  const Result r = run({"compile", corpus("and2.rft"), "-o", (dir_ / "no" / "x.iosa").string()});
  EXPECT_EQ(r.code, kExitIo);
}

TEST(Cli, CheckRejectsViolator) {
  const Result r = run({"check", corpus("violator.iosa")});
  EXPECT_EQ(r.code, kExitNegative);
  EXPECT_EQ(r.kv.at("weakly_deterministic"), "false");
  EXPECT_NE(r.kv.at("counterexample").find("initial"), std::string::npos);
}

TEST(Cli, CheckAcceptsSpareGates) {
  const Result r = run({"--kv", "check", corpus("sg_2x2.rft")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.kv.at("weakly_deterministic"), "true");
  EXPECT_NE(r.kv.at("partial_compositions"), "0");
}

TEST(Cli, SimulateRefusesNonDeterministicModelsUnlessForced) {
  EXPECT_EQ(run({"simulate", corpus("violator.iosa"), "--runs", "10"}).code, kExitNegative);
}

TEST_F(TempDir, SimulateReportsEstimateAndTrace) {
  const auto trace = dir_ / "run0.trace";
  const Result r = run({"simulate", corpus("be_single.rft"), "--metric", "unavailability",
                        "--horizon", "2000", "--runs", "50", "--seed", "7", "--trace",
                        trace.string(), "--jobs", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.kv.at("metric"), "unavailability");
  EXPECT_EQ(r.kv.at("runs"), "50");
  EXPECT_EQ(r.kv.at("seed"), "7");
  const double est = std::stod(r.kv.at("estimate"));
  EXPECT_GE(est, 0.0);
  EXPECT_LE(est, 1.0);
  const std::string t = testing::slurp(trace);
  EXPECT_EQ(t.rfind("t=", 0), 0u);
  // Same seed, different thread count: identical report values.
  const Result again = run({"simulate", corpus("be_single.rft"), "--metric", "unavailability",
                            "--horizon", "2000", "--runs", "50", "--seed", "7"});
  EXPECT_EQ(again.kv.at("estimate"), r.kv.at("estimate"));
  EXPECT_EQ(again.kv.at("half_width"), r.kv.at("half_width"));
}

TEST(Cli, ProbeReportsOverlap) {
  const Result r = run({"simulate", corpus("and2.rft"), "--horizon", "50", "--runs", "100",
                        "--probe"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("overlap"), std::string::npos);
}

}  // namespace
}  // namespace rft
