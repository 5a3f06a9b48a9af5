#pragma once

#include <cstdint>

namespace aw {

// Counter-based generator: the SplitMix64 finalizer applied to
// seed + (counter+1) * 0x9E3779B97F4A7C15. Stateless, so any language can
// reproduce the stream from (seed, counter); the exact constants are part of
// the output-reproducibility contract and documented in the README.
struct CounterRng {
  std::uint64_t seed = 0;

  std::uint64_t at(std::uint64_t counter) const {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53-bit resolution
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(at(counter) >> 11) * 0x1p-53;
  }

  // uniform in [-1, 1)
  double symmetric(std::uint64_t counter) const {
    return 2.0 * uniform(counter) - 1.0;
  }
};

}  // namespace aw
