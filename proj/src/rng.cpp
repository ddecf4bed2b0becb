// Copyright 2026 The phasemem Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasemem/rng.hpp"

#include <cmath>
#include <numbers>

namespace phasemem {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                         std::uint64_t c) noexcept {
  std::uint64_t k = splitmix64_mix(seed + kGolden);
  k = splitmix64_mix(k ^ (a + 1) * kGolden);
  k = splitmix64_mix(k ^ (b + 1) * kGolden);
  k = splitmix64_mix(k ^ (c + 1) * kGolden);
  return k;
}

std::uint64_t CounterRng::word(std::uint64_t index) const noexcept {
  return splitmix64_mix(key_ + (index + 1) * kGolden);
}

double CounterRng::uniform(std::uint64_t index) const noexcept {
  // (w + 0.5) / 2^53 keeps the result strictly inside (0, 1).
  return (static_cast<double>(word(index) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t index) const noexcept {
  const double u1 = uniform(2 * index);
  const double u2 = uniform(2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace phasemem
