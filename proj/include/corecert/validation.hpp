#pragma once

#include <cstdint>
#include <vector>

#include "corecert/game.hpp"

namespace corecert {

struct ViolationEstimate {
  double estimate = 0.0;       // violations / trials
  long long violations = 0;
  int trials = 0;
  double hoeffding_halfwidth = 0.0;  // sqrt(ln(2/alpha) / (2 trials))
  std::uint64_t seed = 0;
};

inline constexpr double kTieTol = 1e-9;

// True iff the joint perturbation delta (canonical coalition order) makes
// some proper coalition strictly profitable at x:
// sum_{i in S} x_i < nominal(S) + delta_S. Ties are non-violations, and a
// contact within tie_tol of the boundary counts as a tie so that
// allocations computed by the solvers (exact only up to the feasibility
// tolerance) are not misclassified on deterministic games.
bool point_violates(const GameDefinition& game, const std::vector<double>& x, const std::vector<double>& delta,
                    double tie_tol = kTieTol);

// True iff some allocation of a core with per-coalition minima m_S becomes
// unstable under delta. Exact reduction: a core member violating S exists
// iff m_S < nominal(S) + delta_S strictly. Same tie convention as above.
bool core_violates(const std::vector<double>& minima, const GameDefinition& game, const std::vector<double>& delta,
                   double tie_tol = kTieTol);

// Fraction of trials fresh i.i.d. draws that destabilize the allocation x.
// The draw stream is derived from (seed, test domain, shard), disjoint from
// the training stream of sample_scenarios by construction. For a fixed
// (seed, shards) the result is independent of evaluation order; shards > 1
// run concurrently.
ViolationEstimate estimate_point_instability(const GameDefinition& game, const std::vector<double>& x, int trials,
                                             std::uint64_t seed, double alpha, int shards = 1);

// Same draw protocol for the core-level event, via the minima reduction.
ViolationEstimate estimate_core_instability(const std::vector<double>& minima, const GameDefinition& game, int trials,
                                            std::uint64_t seed, double alpha, int shards = 1);

double hoeffding_halfwidth(int trials, double alpha);

}  // namespace corecert
