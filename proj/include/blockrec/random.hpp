#pragma once

#include <cstdint>
#include <random>

namespace blockrec {

// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed of child stream `index` under `parent`:
//   splitmix64(parent ^ splitmix64(index)).
// Trials derive their seed from (master_seed, trial_index) and then split it
// into per-purpose streams the same way, so results never depend on the order
// in which trials run.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
  return splitmix64(parent ^ splitmix64(index));
}

// Platform-stable random stream. The engine output is fixed by the standard,
// and every conversion below is spelled out rather than delegated to the
// implementation-defined std:: distributions.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Consumes exactly one draw regardless of prob.
  bool bernoulli(double prob) { return uniform() < prob; }

  std::uint8_t fair_bit() { return static_cast<std::uint8_t>(engine_() >> 63); }

  // Uniform integer in [0, bound), bound > 0, by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % bound;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace blockrec
