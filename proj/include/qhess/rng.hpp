#pragma once

#include <cstdint>

namespace qhess {

/// Deterministic 64-bit generator used everywhere randomness is needed.
///
/// Core stream: xorshift64* (shifts 12/25/27, multiplier 0x2545F4914F6CDD1D).
/// The seed is passed through one splitmix64 step (constants 0x9E3779B97F4A7C15,
/// 0xBF58476D1CE4E5B9, 0x94D049BB133111EB) so that seed 0 and nearby seeds
/// yield unrelated streams. The sequence is fixed by this header, not by any
/// platform library, so outputs are bit-identical across runs and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix64(seed)) {
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ull;
  }

  std::uint64_t next_u64() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1Dull;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform integer in [0, n). Modulo reduction: the tiny bias is irrelevant
  /// here, determinism is what matters.
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Per-component seed derivation from an experiment master seed.
/// Fixed offsets keep the streams independent and documented:
/// 1 = dataset generation, 2 = circuit parameter init, 3 = FFNN init,
/// 4 = train/test split, 100+i = i-th repetition of a multi-seed experiment.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t offset) {
  return Rng::splitmix64(master + 0x9E3779B97F4A7C15ull * offset);
}

}  // namespace qhess
