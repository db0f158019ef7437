#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace matsamp {

/// Finalizer of the SplitMix64 generator (Steele, Lea & Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based SplitMix64 stream, "splitmix64-v1".
///
/// The i-th output is a pure function of (seed, i), so the stream can be
/// replayed or split across workers without changing any draw. Child
/// streams come from derive_seed(), which hashes the parent seed together
/// with a label and an index; distinct labels give unrelated streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64_mix(state_);
  }

  /// Uniform on [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe to pass through log().
  double next_double_positive() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform on {0, ..., bound-1}, exactly unbiased (rejection sampling).
  std::uint64_t next_below(std::uint64_t bound) {
    assert(bound > 0);
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  /// Standard normal via Box-Muller; consumes two uniforms per call.
  double next_gaussian() {
    const double u1 = next_double_positive();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

/// Deterministic child-stream seed: a SplitMix64 finalizer chain over the
/// parent seed, the label bytes and the index.
inline std::uint64_t derive_seed(std::uint64_t parent, std::string_view label,
                                 std::uint64_t index = 0) {
  std::uint64_t h = splitmix64_mix(parent ^ 0x243f6a8885a308d3ULL);
  for (const char c : label) h = splitmix64_mix(h ^ static_cast<unsigned char>(c));
  return splitmix64_mix(h ^ index);
}

}  // namespace matsamp
