#pragma once

#include <vector>

#include "corecert/certificates.hpp"
#include "corecert/game.hpp"
#include "corecert/lp.hpp"

namespace corecert {

// Solution of the relaxed scenario program
//   min sum_k xi_k   s.t.  sum_i x_i = grand value, x >= 0, xi >= 0,
//                          sum_{i in S} x_i >= u(S, sample k) - xi_k
//                          for every proper S and every sample k.
// x_star is an allocation in the scenario zeta_star-core (the least core of
// the sampled game); xi_star are the per-sample slacks at the optimum.
struct RelaxationResult {
  std::vector<double> x_star;
  std::vector<double> xi_star;   // length K, all >= 0
  double zeta_star = 0.0;        // max_k xi_star[k]
  int s_star = 0;                // active-sample count at x_star
  bool core_nonempty = false;    // true iff every xi_star[k] <= feas_tol

  int num_samples() const { return static_cast<int>(xi_star.size()); }
};

// Solves the relaxed scenario program. The per-sample constraint blocks are
// generated lazily (the LP has (2^n - 2) * K rows in monolithic form, almost
// all of them slack at the optimum), which reproduces the monolithic optimum
// within feas_tol. Among optimal allocations the lexicographically smallest
// x is returned: the optimal objective is pinned and each coordinate is
// minimized in turn.
RelaxationResult solve_relaxed(const ScenarioGame& sg, double feas_tol = kDefaultFeasTol);

// Number of samples k for which some proper coalition satisfies
// sum_{i in S} x_i <= u(S, sample k) + feas_tol. Non-strict, so ties at the
// constraint boundary are counted; the certificate interval widens with the
// count, so over-counting keeps the reported bounds valid.
int count_active_samples(const ScenarioGame& sg, const std::vector<double>& x, double feas_tol = kDefaultFeasTol);

// Certificates for the returned least-core allocation: the risk interval at
// s = s_star plus, when s_star >= 1, the directly computable bound theta.
CertificateReport certify_relaxed(const RelaxationResult& result, double beta);

}  // namespace corecert
