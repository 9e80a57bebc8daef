#pragma once

#include <cstdint>
#include <vector>

namespace swapfree {

/// SplitMix64 generator. Every random draw in the library goes through this
/// class so that seeded runs are reproducible across platforms and standard
/// library implementations (std distributions are not).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [0, bound). Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound);

  /// Standard normal via Box-Muller (the sine branch is discarded).
  double normal();

  /// Independent child stream seeded from this one.
  SplitMix64 split() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

/// Deterministic seed derivation for sub-streams, e.g. (seed, instance, role).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

/// In-place Fisher-Yates shuffle.
template <class T>
void shuffle(std::vector<T>& values, SplitMix64& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace swapfree
