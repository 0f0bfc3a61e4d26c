#pragma once

#include <cstdint>

namespace lcd {

/// SplitMix64 (Steele, Lea & Flood 2014): 64-bit state advanced by the golden
/// gamma 0x9E3779B97F4A7C15 and finalized with the variant-13 mixer.
/// Doubles take the top 53 bits, giving uniforms on [0, 1).
class SplitMix64 {
public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t next() noexcept { return mix(state_ += kGamma); }

  constexpr double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Independent stream for item `index` of a run seeded with `seed`:
  /// initial state mix(seed + gamma * (index + 1)).
  static constexpr SplitMix64 substream(std::uint64_t seed, std::uint64_t index) noexcept {
    return SplitMix64(mix(seed + kGamma * (index + 1)));
  }

private:
  std::uint64_t state_;
};

} // namespace lcd
