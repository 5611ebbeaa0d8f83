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

#ifndef RFT_RNG_HPP
#define RFT_RNG_HPP

#include <cstdint>

namespace rft {

// Counter-based generator: the i-th output of a stream is
// splitmix64_finalize(key + (i + 1) * kGolden), i.e. SplitMix64 evaluated at
// an explicit counter.  A stream is identified by its 64-bit key, derived from
// (seed, run, substream) with derive_stream_key().  Because outputs depend
// only on (key, counter), every clock can own an independent substream and
// its k-th sample does not depend on how other events were interleaved.
class CounterRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  explicit CounterRng(std::uint64_t key = 0, std::uint64_t counter = 0)
      : key_(key), counter_(counter) {}

  std::uint64_t next() {
    ++counter_;
    return finalize(key_ + counter_ * kGolden);
  }

  /// Uniform double in the open interval (0, 1), 53 random bits.
  double uniform_open() {
    // (k + 0.5) / 2^53 never hits 0 or 1.
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  static std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

inline std::uint64_t derive_stream_key(std::uint64_t seed, std::uint64_t run,
                                       std::uint64_t substream) {
  std::uint64_t k = CounterRng::finalize(seed ^ 0x5851F42D4C957F2DULL);
  k = CounterRng::finalize(k + (run + 1) * CounterRng::kGolden);
  k = CounterRng::finalize(k ^ ((substream + 1) * 0xD1B54A32D192ED03ULL));
  return k;
}

}  // namespace rft

#endif  // RFT_RNG_HPP
