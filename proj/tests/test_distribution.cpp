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
#include <cstdlib>
#include <set>
#include <stdexcept>

#include "rft/distribution.hpp"
#include "rft/rng.hpp"

namespace rft {
namespace {

double sample_mean(const Distribution& d, int n, std::uint64_t key = 7) {
  CounterRng rng(key);
  double sum = 0;
  for (int i = 0; i < n; ++i) sum += d.sample(rng);
  return sum / n;
}

TEST(Rng, OutputDependsOnlyOnKeyAndCounter) {
  CounterRng a(42), b(42);
  for (int i = 0; i < 10; ++i) a.next();
  CounterRng c(42, 10);
  EXPECT_EQ(a.next(), c.next());
  EXPECT_EQ(b.next(), CounterRng(42).next());
}

TEST(Rng, UniformIsInsideOpenInterval) {
  CounterRng r(0);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform_open();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, StreamKeysAreDistinct) {
  std::set<std::uint64_t> keys;
  for (std::uint64_t run = 0; run < 50; ++run)
    for (std::uint64_t sub = 0; sub < 20; ++sub) keys.insert(derive_stream_key(1, run, sub));
  EXPECT_EQ(keys.size(), 1000u);
  EXPECT_NE(derive_stream_key(1, 0, 0), derive_stream_key(2, 0, 0));
}

TEST(Distribution, MeansMatchClosedForms) {
  const int n = 200000;
  EXPECT_NEAR(sample_mean(Distribution::exponential(2), n), 0.5, 0.01);
  EXPECT_NEAR(sample_mean(Distribution::uniform(1, 3), n), 2.0, 0.01);
  EXPECT_NEAR(sample_mean(Distribution::erlang(3, 2), n), 1.5, 0.02);
  EXPECT_NEAR(sample_mean(Distribution::weibull(2, 1), n), std::tgamma(1.5), 0.01);
  EXPECT_NEAR(sample_mean(Distribution::lognormal(0, 0.5), n), std::exp(0.125), 0.01);
}

TEST(Distribution, ExponentialTailProbability) {
  const Distribution d = Distribution::exponential(1);
  CounterRng rng(3);
  int over = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) over += d.sample(rng) > 2.0;
  EXPECT_NEAR(static_cast<double>(over) / n, std::exp(-2.0), 0.003);
}

TEST(Distribution, SamplesArePositive) {
  for (const auto& d : {Distribution::exponential(100), Distribution::uniform(0, 1e-9),
                        Distribution::weibull(0.3, 1), Distribution::lognormal(-5, 3)}) {
    CounterRng rng(11);
    for (int i = 0; i < 10000; ++i) ASSERT_GT(d.sample(rng), 0.0) << d.to_string();
  }
}

TEST(Distribution, DomainErrors) {
  EXPECT_THROW(Distribution::exponential(0), std::invalid_argument);
  EXPECT_THROW(Distribution::uniform(2, 1), std::invalid_argument);
  EXPECT_THROW(Distribution::uniform(-1, 1), std::invalid_argument);
  EXPECT_THROW(Distribution::weibull(1, -1), std::invalid_argument);
  EXPECT_THROW(Distribution::lognormal(0, 0), std::invalid_argument);
  EXPECT_THROW(Distribution::erlang(0, 1), std::invalid_argument);
  const double p[] = {1.5, 1.0};
  EXPECT_THROW(Distribution::make("erlang", p, 2), std::invalid_argument);
  EXPECT_THROW(Distribution::make("exponential", p, 2), std::invalid_argument);
  EXPECT_THROW(Distribution::make("gamma", p, 1), std::invalid_argument);
}

TEST(Distribution, TextRoundTrip) {
  for (const auto& d : {Distribution::exponential(0.1), Distribution::uniform(1, 2),
                        Distribution::erlang(2, 1.0 / 3), Distribution::lognormal(-0.25, 0.5)}) {
    const std::string s = d.to_string();
    const auto open = s.find('(');
    const std::string fam = s.substr(0, open);
    std::vector<double> params;
    const char* cur = s.c_str() + open + 1;
    while (*cur != ')') {
      char* end = nullptr;
      params.push_back(std::strtod(cur, &end));
      cur = end;
      while (*cur == ',' || *cur == ' ') ++cur;
    }
    EXPECT_EQ(Distribution::make(fam, params.data(), params.size()), d) << s;
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0 / 3), "0.3333333333333333");
}

}  // namespace
}  // namespace rft
