#pragma once

#include <cstdint>
#include <random>

namespace curricula {

/// Seedable generator used everywhere randomness is needed.
///
/// Wraps std::mt19937_64 (whose output stream is fixed by the standard) and
/// derives bounded integers and unit-interval reals from raw 64-bit draws
/// only, so seeded runs are bit-identical across platforms and compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  void seed(std::uint64_t s) { engine_.seed(s); }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n). Rejection sampling keeps it exactly uniform.
  std::int64_t uniform_int(std::int64_t n) {
    const auto un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return static_cast<std::int64_t>(x % un);
  }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Derive an independent child seed; used to give submodules their own
  /// streams without correlating them.
  std::uint64_t fork_seed() {
    // splitmix64 step over a fresh draw
    std::uint64_t z = engine_() + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace curricula
