// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace phasemem {

/// Counter-based generator "splitmix64-ctr/v1".
///
/// Word i of a stream with key k is splitmix64_mix(k + (i + 1) * 0x9E3779B97F4A7C15),
/// i.e. the i-th output of a SplitMix64 sequence seeded with k, but addressable
/// at any index. Uniforms take the top 53 bits; normals use Box-Muller on a
/// pair of words. Keys for sub-streams come from `derive_key`.
class CounterRng {
 public:
  static constexpr const char* kName = "splitmix64-ctr/v1";

  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t key() const noexcept { return key_; }

  std::uint64_t word(std::uint64_t index) const noexcept;
  // Uniform on (0, 1).
  double uniform(std::uint64_t index) const noexcept;
  // Standard normal from words 2*index and 2*index + 1.
  double normal(std::uint64_t index) const noexcept;

 private:
  std::uint64_t key_;
};

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;

// Key for sub-stream (a, b, c) of `seed`.
std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                         std::uint64_t c = 0) noexcept;

}  // namespace phasemem
