#pragma once

#include <cstdint>
#include <random>

namespace corecert {

// Deterministic random stream. mt19937_64 raw output is pinned by the
// standard, and the variate transforms below are implemented by hand, so a
// given seed produces the same draws on every platform and toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Marsaglia polar method without a cached spare, so the stream position
  // is a pure function of the draws made so far.
  double normal(double mean, double stddev);

  // Rejection from the untruncated normal; exact for any [lo, hi] with
  // non-negligible mass.
  double truncated_normal(double mean, double stddev, double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

// Domain-separated seed derivation (splitmix64 finalizer). Distinct salts
// give statistically disjoint streams from one base seed; used to keep
// training samples, test samples, and shards independent.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt);

inline constexpr std::uint64_t kSeedDomainTraining = 0x01;
inline constexpr std::uint64_t kSeedDomainTest = 0x02;

}  // namespace corecert
