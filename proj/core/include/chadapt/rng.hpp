/*
   Copyright 2026 The chadapt Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace chadapt {

/**
 * Philox4x32-10 counter-based generator (Salmon et al., Random123).
 *
 * The 64-bit seed forms the key; the 128-bit counter is split into a
 * 64-bit stream id (high words) and a 64-bit block index (low words).
 * Each block yields four 32-bit words, served as two 64-bit outputs.
 * Streams with distinct ids never overlap, so parallel shards seeded
 * with (seed, shard) reproduce bit-for-bit regardless of scheduling.
 */
class Philox4x32 {
 public:
  using result_type = std::uint64_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Skip `n` 64-bit outputs.
  void discard(std::uint64_t n) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// The raw bijection: ten rounds on `counter` under `key`.
  static Block encrypt(Block counter, Key key) noexcept;

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Block buffer_{};
  unsigned next_ = 2;  // index of the next 64-bit half; 2 means empty
};

/// Uniform double in the open interval (0, 1) from the top 53 bits.
double uniform_open01(Philox4x32& rng) noexcept;

/// Standard normal deviate by the Box-Muller transform (one draw per call).
double standard_normal(Philox4x32& rng) noexcept;

/// SplitMix64 finalizer; used to derive child seeds from (seed, index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace chadapt
