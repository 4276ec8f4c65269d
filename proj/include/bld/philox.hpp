// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace bld {

/// Philox4x32-10 block cipher used as a counter-based generator.
///
/// Output for a (counter, key) pair is a pure function of its inputs, so any
/// particle's stream can be reproduced without replaying the others.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter generate(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      ctr = single_round(ctr, key);
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static constexpr Counter single_round(const Counter& ctr, const Key& key) noexcept {
    const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
};

// Reserved stream ids; particle streams use ids below kReservedStreamBase.
inline constexpr std::uint64_t kReservedStreamBase = std::uint64_t{1} << 62;
inline constexpr std::uint64_t kTargetStream = kReservedStreamBase + 0;
inline constexpr std::uint64_t kPerturbationStream = kReservedStreamBase + 1;
inline constexpr std::uint64_t kScheduleStream = kReservedStreamBase + 2;

/// A single reproducible random stream identified by (seed, stream id).
///
/// Each Philox block yields two uniforms, or two standard normals via
/// Box-Muller. The whole state is the block counter plus one cached normal.
class CounterStream {
 public:
  CounterStream() = default;
  CounterStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  std::uint64_t blocks_used() const noexcept { return counter_; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept {
    if (has_cached_uniform_) {
      has_cached_uniform_ = false;
      return cached_uniform_;
    }
    const auto words = next_block();
    cached_uniform_ = to_unit(words[2], words[3]);
    has_cached_uniform_ = true;
    return to_unit(words[0], words[1]);
  }

  double normal() noexcept {
    if (has_cached_normal_) {
      has_cached_normal_ = false;
      return cached_normal_;
    }
    const auto words = next_block();
    const double u1 = 1.0 - to_unit(words[0], words[1]);  // (0, 1]
    const double u2 = to_unit(words[2], words[3]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_normal_ = radius * std::sin(angle);
    has_cached_normal_ = true;
    return radius * std::cos(angle);
  }

  bool operator==(const CounterStream&) const = default;

 private:
  Philox4x32::Counter next_block() noexcept {
    const Philox4x32::Counter ctr{
        static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
        static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32)};
    const Philox4x32::Key key{static_cast<std::uint32_t>(seed_),
                              static_cast<std::uint32_t>(seed_ >> 32)};
    ++counter_;
    return Philox4x32::generate(ctr, key);
  }

  static double to_unit(std::uint32_t lo, std::uint32_t hi) noexcept {
    const std::uint64_t bits = (std::uint64_t{hi} << 32) | lo;
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::uint64_t counter_ = 0;
  double cached_normal_ = 0.0;
  double cached_uniform_ = 0.0;
  bool has_cached_normal_ = false;
  bool has_cached_uniform_ = false;
};

}  // namespace bld
