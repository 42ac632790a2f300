#pragma once

#include <cstdint>

namespace rqpe {

/// Counter-based uniform generator: every draw is a pure function of
/// (seed, run, line), so sampling is reproducible in any execution order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix(seed)) {}

  std::uint64_t bits(std::uint64_t run, std::uint64_t line) const {
    return mix(mix(key_ ^ mix(run)) + line);
  }

  /// Uniform double in [0, 1).
  double uniform(std::uint64_t run, std::uint64_t line) const {
    return static_cast<double>(bits(run, line) >> 11) * 0x1.0p-53;
  }

 private:
  // SplitMix64 finalizer.
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
};

}  // namespace rqpe
