#pragma once

#include <cstdint>

namespace redplan {

// SplitMix64 output finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Maps a raw word u to (u + 1) / 2^64, a value in (0, 1]. Zero is unreachable,
// so -ln(U) is always finite.
constexpr double uniform_from_bits(std::uint64_t u) noexcept {
  return (static_cast<double>(u) + 1.0) * 0x1p-64;
}

// Deterministic pseudorandom stream (SplitMix64). A plain value type: copying
// a stream copies its position, and two copies yield identical sequences.
class RandomStream {
 public:
  explicit constexpr RandomStream(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next_u64() noexcept {
    state_ += kGamma;
    return mix64(state_);
  }

  constexpr double next_uniform() noexcept { return uniform_from_bits(next_u64()); }

  // Child stream keyed by `key`; depends only on the current state and key.
  constexpr RandomStream split(std::uint64_t key) const noexcept {
    return RandomStream(mix64(state_ ^ mix64(key + kGamma)));
  }

  // Counter-based stream for one (trial, worker) cell of a simulation. The
  // result depends only on the three inputs, never on execution order.
  static constexpr RandomStream for_cell(std::uint64_t seed, std::uint64_t trial,
                                         std::uint64_t worker) noexcept {
    return RandomStream(mix64(mix64(mix64(seed) ^ (trial + kGamma)) ^ (worker * kGamma + 1)));
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

  friend constexpr bool operator==(const RandomStream&, const RandomStream&) = default;

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state_;
};

}  // namespace redplan
