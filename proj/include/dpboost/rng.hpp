// Copyright 2026 The dpboost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <limits>

namespace dpboost {

/// Reproducible random stream keyed by (seed, stream_id).
///
/// The stream is a SplitMix64 sequence whose starting state is
///
///     state_0 = mix64(mix64(seed) ^ (stream_id * 0xD1B54A32D192ED03))
///
/// and whose k-th output (k = 1, 2, ...) is mix64(state_0 + k * 0x9E3779B97F4A7C15),
/// where mix64 is the SplitMix64 finalizer. Outputs are therefore bit-exact
/// across platforms and compilers. Every stochastic routine in the library
/// takes an explicit RngStream; child streams for parallel work are derived
/// with derive(), never by sharing a stream between threads.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed),
        stream_id_(stream_id),
        state_(mix64(mix64(seed) ^ (stream_id * 0xD1B54A32D192ED03ULL))) {}

  explicit RngStream(std::uint64_t seed) : RngStream(seed, 0) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix64(state_);
  }

  result_type operator()() { return next_u64(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  /// Uniform double on the open interval (0, 1), 53 bits of resolution.
  double uniform_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). Lemire-style rejection keeps it unbiased.
  std::uint64_t uniform_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  /// Independent child stream. The child id depends on this stream's
  /// identity and on `sub_id`, not on how many values were drawn so far.
  RngStream derive(std::uint64_t sub_id) const {
    return RngStream(seed_, mix64(stream_id_ * 0x9FB21C651E98DF25ULL ^ mix64(sub_id + kGolden)));
  }

  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
};

}  // namespace dpboost
