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

#ifndef RFT_DISTRIBUTION_HPP
#define RFT_DISTRIBUTION_HPP

#include <array>
#include <string>
#include <string_view>

#include "rft/rng.hpp"

namespace rft {

enum class Family { kExponential, kUniform, kWeibull, kLognormal, kErlang };

/// Continuous law with support in (0, inf), attached to a clock.
///
/// Parameters by family:
///   exponential(rate)       rate > 0
///   uniform(a, b)           0 <= a < b
///   weibull(shape, scale)   shape > 0, scale > 0
///   lognormal(mu, sigma)    mu finite, sigma > 0
///   erlang(k, rate)         k positive integer, rate > 0
///
/// Sampling uses inverse transforms only (Box-Muller for the normal part of
/// lognormal), so a sample is a pure function of the uniforms drawn.
class Distribution {
 public:
  Distribution() = default;  // exponential(1)

  static Distribution exponential(double rate);
  static Distribution uniform(double a, double b);
  static Distribution weibull(double shape, double scale);
  static Distribution lognormal(double mu, double sigma);
  static Distribution erlang(int k, double rate);

  /// Builds from a family name and raw parameters; throws
  /// std::invalid_argument on arity or domain errors.
  static Distribution make(std::string_view family, const double* params,
                           std::size_t count);

  Family family() const { return family_; }
  double param(std::size_t i) const { return params_[i]; }
  std::size_t arity() const { return family_ == Family::kExponential ? 1 : 2; }

  double sample(CounterRng& rng) const;

  /// Canonical text form, e.g. "exponential(0.01)"; doubles are printed in
  /// shortest round-trip form.
  std::string to_string() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  Distribution(Family f, double p0, double p1) : family_(f), params_{p0, p1} {}

  Family family_ = Family::kExponential;
  std::array<double, 2> params_{1.0, 0.0};
};

std::string_view family_name(Family f);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

}  // namespace rft

#endif  // RFT_DISTRIBUTION_HPP
