#include "corecert/validation.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

#include "corecert/errors.hpp"
#include "corecert/rng.hpp"

namespace corecert {

namespace {

// Shared driver: per-shard derived streams, violation counts summed over
// shards so the total is independent of scheduling.
template <typename ViolatesDelta>
ViolationEstimate estimate(const GameDefinition& game, int trials, std::uint64_t seed, double alpha, int shards,
                           const ViolatesDelta& violates) {
  if (trials < 1) throw std::invalid_argument("instability estimate: need at least one trial");
  if (shards < 1) throw std::invalid_argument("instability estimate: shard count must be positive");
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw std::invalid_argument("instability estimate: alpha must be in (0, 1)");

  auto run_shard = [&](int shard) {
    const int base = trials / shards;
    const int shard_trials = base + (shard < trials % shards ? 1 : 0);
    Rng rng(derive_seed(seed, kSeedDomainTest + 16 * static_cast<std::uint64_t>(shard)));
    long long count = 0;
    for (int t = 0; t < shard_trials; ++t) {
      if (violates(sample_joint_perturbation(game, rng))) ++count;
    }
    return count;
  };

  long long violations = 0;
  if (shards == 1) {
    violations = run_shard(0);
  } else {
    std::vector<std::future<long long>> futures;
    futures.reserve(static_cast<std::size_t>(shards));
    for (int shard = 0; shard < shards; ++shard) {
      futures.push_back(std::async(std::launch::async, run_shard, shard));
    }
    for (auto& f : futures) violations += f.get();
  }

  ViolationEstimate out;
  out.violations = violations;
  out.trials = trials;
  out.estimate = static_cast<double>(violations) / trials;
  out.hoeffding_halfwidth = hoeffding_halfwidth(trials, alpha);
  out.seed = seed;
  return out;
}

}  // namespace

bool point_violates(const GameDefinition& game, const std::vector<double>& x, const std::vector<double>& delta,
                    double tie_tol) {
  if (x.size() != static_cast<std::size_t>(game.n)) {
    throw std::invalid_argument("point_violates: allocation dimension mismatch");
  }
  for (std::size_t row = 0; row < game.coalition_count(); ++row) {
    if (coalition_sum(game.coalitions[row], x) < game.nominal[row] + delta[row] - tie_tol) return true;
  }
  return false;
}

bool core_violates(const std::vector<double>& minima, const GameDefinition& game, const std::vector<double>& delta,
                   double tie_tol) {
  if (minima.size() != game.coalition_count()) {
    throw std::invalid_argument("core_violates: minima vector does not match the coalition count");
  }
  for (std::size_t row = 0; row < game.coalition_count(); ++row) {
    if (game.nominal[row] + delta[row] > minima[row] + tie_tol) return true;
  }
  return false;
}

ViolationEstimate estimate_point_instability(const GameDefinition& game, const std::vector<double>& x, int trials,
                                             std::uint64_t seed, double alpha, int shards) {
  if (x.size() != static_cast<std::size_t>(game.n)) {
    throw std::invalid_argument("estimate_point_instability: allocation dimension mismatch");
  }
  return estimate(game, trials, seed, alpha, shards,
                  [&](const std::vector<double>& delta) { return point_violates(game, x, delta); });
}

ViolationEstimate estimate_core_instability(const std::vector<double>& minima, const GameDefinition& game, int trials,
                                            std::uint64_t seed, double alpha, int shards) {
  if (minima.size() != game.coalition_count()) {
    throw std::invalid_argument("estimate_core_instability: minima vector does not match the coalition count");
  }
  return estimate(game, trials, seed, alpha, shards,
                  [&](const std::vector<double>& delta) { return core_violates(minima, game, delta); });
}

double hoeffding_halfwidth(int trials, double alpha) {
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * trials));
}

}  // namespace corecert
