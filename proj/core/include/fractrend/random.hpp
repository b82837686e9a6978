#pragma once

#include <cstdint>

namespace fractrend {

// SplitMix64 (Steele, Lea, Flood 2014). The stream is fully determined by
// the seed, so fixtures and multi-start jitter are identical on every
// platform and standard library. Element i of the stream is mix(seed + (i+1)*kGamma),
// which makes it addressable by index.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Element `index` (0-based) of the stream for `seed`, without iterating.
  static constexpr std::uint64_t at(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix(seed + (index + 1) * kGamma);
  }

  // Top 53 bits mapped to [0, 1).
  static constexpr double to_unit(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

  constexpr std::uint64_t next() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  constexpr double uniform() noexcept { return to_unit(next()); }

  constexpr double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace fractrend
