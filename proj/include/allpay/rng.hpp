#pragma once

#include <concepts>
#include <cstdint>

namespace allpay {

/// Any source of U[0,1) draws.
template <class S>
concept UniformSource = requires(S& s) {
  { s.next_uniform() } -> std::convertible_to<double>;
};

/// Counter-based stream: trial t of a run seeded with `seed` always sees the
/// same draws, no matter which thread evaluates it or in what order.
class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint64_t trial)
      : state_(mix(mix(seed) + trial * kGamma)) {}

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix(state_);
  }

  /// 53 random bits scaled into [0, 1).
  double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // SplitMix64 finalizer.
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t state_;
};

}  // namespace allpay
