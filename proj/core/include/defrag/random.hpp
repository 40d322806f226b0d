#pragma once

#include <cstdint>
#include <random>

namespace defrag {

/**
 * @brief Seeded random source with platform-independent output
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++
 * standard. The standard distributions are not (their algorithms are left to
 * the library vendor), so the draws below are implemented here on top of the
 * raw engine output. Integer draws are bit-reproducible everywhere; normal
 * and exponential draws go through <cmath> and may differ in the last ulp
 * between math libraries.
 */
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, bound); bound must be positive. Rejection
  /// sampling, so every value is exactly equally likely.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  /// Normal draw (Box-Muller, one value per call).
  double normal(double mean, double stddev);

  /// Exponential draw with the given mean (inverse transform).
  double exponential(double mean);

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive independent per-run seeds from a base
/// seed and a run index.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace defrag
