#pragma once

#include <optional>
#include <vector>

#include "corecert/coalition.hpp"
#include "corecert/game.hpp"
#include "corecert/lp.hpp"

namespace corecert {

// H-representation of a (possibly relaxed) scenario core:
//   { x : sum_i x_i = efficiency_rhs,
//         sum_{i in S} x_i >= coalition_rhs[S] - zeta  for every proper S }
// intersected with x >= 0 when nonneg is set. zeta = 0 gives the plain
// scenario core; zeta > 0 charges every defecting coalition a penalty.
struct CorePolytope {
  int n = 0;
  double efficiency_rhs = 0.0;
  std::vector<Coalition> coalitions;     // canonical order
  std::vector<double> coalition_rhs;     // sample-wise maxima c_S (unshifted)
  double zeta = 0.0;
  bool nonneg = true;

  double effective_rhs(std::size_t row) const { return coalition_rhs[row] - zeta; }

  // Constraint system as a feasibility LP over the n allocation variables.
  LinearProgram to_lp() const;
};

struct CoreEmptiness {
  bool empty = false;
  std::optional<std::vector<double>> witness;  // a member allocation when nonempty
};

// Per-coalition record of one compression probe: whether the probe LP that
// pins the coalition's constraint to equality was feasible, and which sample
// (0-based, smallest on ties) attains the coalition's maximum.
struct CompressionProbe {
  Coalition coalition;
  bool feasible = false;
  int attaining_index = -1;
};

struct CompressionResult {
  std::vector<int> indices;    // compression set, ascending sample indices
  int cardinality = 0;         // |indices|
  std::vector<CompressionProbe> probes;
};

CorePolytope build_core(const ScenarioGame& sg, double zeta = 0.0, bool nonneg = true);

CoreEmptiness is_empty(const CorePolytope& core, double feas_tol = kDefaultFeasTol);

// True iff x satisfies efficiency within feas_tol and every coalition
// constraint (and x >= -feas_tol when the nonneg flag is set).
bool membership(const CorePolytope& core, const std::vector<double>& x, double feas_tol = kDefaultFeasTol);

// Enumerates a compression set of the scenario core: for each proper
// coalition, a feasibility probe with that coalition's constraint forced to
// equality; when feasible, the sample attaining the maximum joins the set.
// Requires a nonempty scenario core (otherwise PreconditionError).
CompressionResult compression_set(const ScenarioGame& sg, double feas_tol = kDefaultFeasTol);

// A-priori complexity bound: the number of proper nonempty coalitions,
// 2^n - 2, each contributing at most one constraint-defining sample.
int apriori_complexity(int n);

// m_S = min { sum_{i in S} x_i : x in core } for every proper coalition;
// one LP per coalition. Requires a nonempty core.
std::vector<double> coalition_minima(const CorePolytope& core, double feas_tol = kDefaultFeasTol);

}  // namespace corecert
