#pragma once

// Seedable randomness with a fully specified algorithm, so that campaigns are
// bit-reproducible across platforms and across implementations in other
// languages:
//
//   * engine: MT19937-64 (std::mt19937_64, seeded with a single 64-bit word);
//   * stream derivation: SplitMix64 finalizer over (seed, stream index);
//   * bounded integers: rejection sampling on the full 64-bit output
//     (threshold = 2^64 mod bound), no std::uniform_int_distribution;
//   * unit doubles: top 53 bits times 2^-53.

#include <cstdint>
#include <random>

namespace ctorsim {

// SplitMix64 output function.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Independent sub-seed for stream `index` of a campaign seeded with `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound); bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % bound;
    }
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ctorsim
