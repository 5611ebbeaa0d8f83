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

#include "rft/distribution.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rft {

namespace {

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

Distribution Distribution::exponential(double rate) {
  if (!positive(rate)) {
    throw std::invalid_argument("exponential rate must be a finite positive real");
  }
  return {Family::kExponential, rate, 0.0};
}

Distribution Distribution::uniform(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || !(a < b)) {
    throw std::invalid_argument("uniform(a,b) requires 0 <= a < b");
  }
  return {Family::kUniform, a, b};
}

Distribution Distribution::weibull(double shape, double scale) {
  if (!positive(shape) || !positive(scale)) {
    throw std::invalid_argument("weibull shape and scale must be positive");
  }
  return {Family::kWeibull, shape, scale};
}

Distribution Distribution::lognormal(double mu, double sigma) {
  if (!std::isfinite(mu) || !positive(sigma)) {
    throw std::invalid_argument("lognormal requires finite mu and sigma > 0");
  }
  return {Family::kLognormal, mu, sigma};
}

Distribution Distribution::erlang(int k, double rate) {
  if (k < 1 || !positive(rate)) {
    throw std::invalid_argument("erlang requires integer k >= 1 and rate > 0");
  }
  return {Family::kErlang, static_cast<double>(k), rate};
}

Distribution Distribution::make(std::string_view family, const double* params,
                                std::size_t count) {
  auto want = [&](std::size_t n) {
    if (count != n) {
      throw std::invalid_argument(std::string(family) + " expects " +
                                  std::to_string(n) + " parameter(s)");
    }
  };
  if (family == "exponential") {
    want(1);
    return exponential(params[0]);
  }
  if (family == "uniform") {
    want(2);
    return uniform(params[0], params[1]);
  }
  if (family == "weibull") {
    want(2);
    return weibull(params[0], params[1]);
  }
  if (family == "lognormal") {
    want(2);
    return lognormal(params[0], params[1]);
  }
  if (family == "erlang") {
    want(2);
    double k = params[0];
    if (k != std::floor(k) || k < 1.0 || k > 1e6) {
      throw std::invalid_argument("erlang shape k must be a positive integer");
    }
    return erlang(static_cast<int>(k), params[1]);
  }
  throw std::invalid_argument("unknown distribution family '" +
                              std::string(family) + "'");
}

double Distribution::sample(CounterRng& rng) const {
  switch (family_) {
    case Family::kExponential:
      return -std::log(rng.uniform_open()) / params_[0];
    case Family::kUniform: {
      double x = params_[0] + (params_[1] - params_[0]) * rng.uniform_open();
      return x > 0.0 ? x : std::nextafter(0.0, 1.0);
    }
    case Family::kWeibull:
      return params_[1] * std::pow(-std::log(rng.uniform_open()), 1.0 / params_[0]);
    case Family::kLognormal: {
      double u1 = rng.uniform_open();
      double u2 = rng.uniform_open();
      double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
      return std::exp(params_[0] + params_[1] * z);
    }
    case Family::kErlang: {
      // Sum of logs as log of product would underflow for large k.
      double acc = 0.0;
      int k = static_cast<int>(params_[0]);
      for (int i = 0; i < k; ++i) acc -= std::log(rng.uniform_open());
      return acc / params_[1];
    }
  }
  return 0.0;
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::kExponential: return "exponential";
    case Family::kUniform: return "uniform";
    case Family::kWeibull: return "weibull";
    case Family::kLognormal: return "lognormal";
    case Family::kErlang: return "erlang";
  }
  return "?";
}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string Distribution::to_string() const {
  std::string out(family_name(family_));
  out += '(';
  if (family_ == Family::kErlang) {
    out += std::to_string(static_cast<int>(params_[0]));
  } else {
    out += format_double(params_[0]);
  }
  if (arity() == 2) {
    out += ',';
    out += format_double(params_[1]);
  }
  out += ')';
  return out;
}

}  // namespace rft
