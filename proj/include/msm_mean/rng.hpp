#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace msmmean {

/// Seeded random source with portable output. The engine is std::mt19937_64,
/// whose sequence is fixed by the C++ standard; bounded draws use rejection
/// sampling on the raw 64-bit output (never std::uniform_int_distribution,
/// whose algorithm is implementation-defined), so a seed reproduces the same
/// draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound) {
    // Values below `threshold` would bias the modulo; 2^64 mod bound of them.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % bound;
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Derives a child seed from a base seed and identifying parts with the
/// splitmix64 finalizer, so sweeps can hand every run its own stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> parts) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(seed);
  for (std::uint64_t part : parts) h = mix(h ^ part);
  return h;
}

}  // namespace msmmean
