#pragma once

#include <cstdint>

namespace nwv {

/// Weyl-sequence increment shared by the generator step and stream hashing.
inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// 64-bit finalizer (Stafford mix13); bijective avalanche mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// splitmix64 generator with hashed substreams. Each (seed, stream) pair maps
/// to its own start state, so substreams are reproducible and independent of
/// how work is split across threads.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// Substream `stream` of the generator family keyed by `seed`. Distinct
  /// (seed, stream) pairs start at distinct, well-separated states.
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t stream) {
    return SplitMix64(mix64(mix64(seed + kGolden) + stream * kGolden));
  }

  result_type operator()() {
    state_ += kGolden;
    return mix64(state_);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(operator()() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Deterministic derived seed for auxiliary streams (sweep rows, paired
/// discrimination runs).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) + index);
}

}  // namespace nwv
