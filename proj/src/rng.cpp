#include "corecert/rng.hpp"

#include <cmath>

#include "corecert/errors.hpp"

namespace corecert {

double Rng::normal(double mean, double stddev) {
  for (;;) {
    const double v1 = 2.0 * uniform01() - 1.0;
    const double v2 = 2.0 * uniform01() - 1.0;
    const double s = v1 * v1 + v2 * v2;
    if (s > 0.0 && s < 1.0) {
      return mean + stddev * v1 * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

double Rng::truncated_normal(double mean, double stddev, double lo, double hi) {
  constexpr int kMaxAttempts = 10'000'000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const double draw = normal(mean, stddev);
    if (draw >= lo && draw <= hi) return draw;
  }
  throw NumericalError("truncated_normal: rejection sampler starved; truncation interval carries negligible mass");
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  // splitmix64 finalizer over the combined state.
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace corecert
