#pragma once

#include <optional>
#include <vector>

namespace corecert {

inline constexpr double kDefaultFeasTol = 1e-9;

struct LinearConstraint {
  std::vector<double> coeffs;
  double rhs = 0.0;
};

// min objective . z  subject to
//   ge:  coeffs . z >= rhs
//   eq:  coeffs . z == rhs
//   z_j >= 0 where nonneg[j], z_j free otherwise.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<LinearConstraint> ge;
  std::vector<LinearConstraint> eq;
  std::vector<bool> nonneg;

  std::size_t num_vars() const { return objective.size(); }

  static LinearProgram feasibility(std::size_t num_vars);  // zero objective, all vars nonnegative

  void add_ge(std::vector<double> coeffs, double rhs) { ge.push_back({std::move(coeffs), rhs}); }
  void add_eq(std::vector<double> coeffs, double rhs) { eq.push_back({std::move(coeffs), rhs}); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> solution;   // present iff Optimal
  double objective_value = 0.0;   // present iff Optimal
};

// Dense two-phase simplex. Deterministic: largest-coefficient pricing with
// index tie-breaks, switching to Bland's rule after a degenerate stall.
// Rows are scaled to unit max-norm before solving; the returned solution is
// feasible for the original constraints within feas_tol.
LpOutcome solve(const LinearProgram& lp, double feas_tol = kDefaultFeasTol);

struct FeasibilityOutcome {
  bool feasible = false;
  std::optional<std::vector<double>> witness;
};

// Feasibility probe: solve with a zero objective; witness iff feasible.
FeasibilityOutcome check_feasible(const LinearProgram& lp, double feas_tol = kDefaultFeasTol);

// Largest violation of the program's constraints at z (equalities by
// absolute residual, inequalities and sign bounds by shortfall).
double max_violation(const LinearProgram& lp, const std::vector<double>& z);

}  // namespace corecert
