#include "corecert/scenario_core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "corecert/errors.hpp"

namespace corecert {

namespace {

std::vector<double> indicator_row(const Coalition& s, int n) {
  std::vector<double> row(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    if (s.contains(i)) row[static_cast<std::size_t>(i)] = 1.0;
  }
  return row;
}

}  // namespace

LinearProgram CorePolytope::to_lp() const {
  LinearProgram lp = LinearProgram::feasibility(static_cast<std::size_t>(n));
  lp.nonneg.assign(static_cast<std::size_t>(n), nonneg);
  lp.add_eq(std::vector<double>(static_cast<std::size_t>(n), 1.0), efficiency_rhs);
  for (std::size_t row = 0; row < coalitions.size(); ++row) {
    lp.add_ge(indicator_row(coalitions[row], n), effective_rhs(row));
  }
  return lp;
}

CorePolytope build_core(const ScenarioGame& sg, double zeta, bool nonneg) {
  if (zeta < 0.0) throw std::invalid_argument("build_core: zeta must be nonnegative");
  CorePolytope core;
  core.n = sg.n;
  core.efficiency_rhs = sg.grand_value;
  core.coalitions = sg.coalitions;
  core.coalition_rhs = worst_case_values(sg).values;
  core.zeta = zeta;
  core.nonneg = nonneg;
  return core;
}

CoreEmptiness is_empty(const CorePolytope& core, double feas_tol) {
  const FeasibilityOutcome out = check_feasible(core.to_lp(), feas_tol);
  if (out.feasible) return {false, out.witness};
  return {true, std::nullopt};
}

bool membership(const CorePolytope& core, const std::vector<double>& x, double feas_tol) {
  if (x.size() != static_cast<std::size_t>(core.n)) {
    throw std::invalid_argument("membership: allocation has dimension " + std::to_string(x.size()) + ", expected " +
                                std::to_string(core.n));
  }
  double total = 0.0;
  for (double v : x) total += v;
  if (std::abs(total - core.efficiency_rhs) > feas_tol) return false;
  if (core.nonneg) {
    for (double v : x) {
      if (v < -feas_tol) return false;
    }
  }
  for (std::size_t row = 0; row < core.coalitions.size(); ++row) {
    if (coalition_sum(core.coalitions[row], x) < core.effective_rhs(row) - feas_tol) return false;
  }
  return true;
}

CompressionResult compression_set(const ScenarioGame& sg, double feas_tol) {
  const CorePolytope core = build_core(sg, 0.0, true);
  if (is_empty(core, feas_tol).empty) {
    throw PreconditionError(
        "compression_set: the scenario core is empty; use the relaxed scenario program to obtain a least-core "
        "allocation instead");
  }

  const WorstCaseValues wc = worst_case_values(sg);
  CompressionResult result;
  result.probes.reserve(core.coalitions.size());
  std::set<int> indices;

  for (std::size_t probe_row = 0; probe_row < core.coalitions.size(); ++probe_row) {
    LinearProgram probe = core.to_lp();
    probe.add_eq(indicator_row(core.coalitions[probe_row], core.n), wc.values[probe_row]);
    const bool feasible = check_feasible(probe, feas_tol).feasible;
    result.probes.push_back({core.coalitions[probe_row], feasible, wc.attaining_index[probe_row]});
    if (feasible) indices.insert(wc.attaining_index[probe_row]);
  }

  result.indices.assign(indices.begin(), indices.end());
  result.cardinality = static_cast<int>(result.indices.size());
  return result;
}

int apriori_complexity(int n) { return proper_coalition_count(n); }

std::vector<double> coalition_minima(const CorePolytope& core, double feas_tol) {
  if (is_empty(core, feas_tol).empty) {
    throw PreconditionError("coalition_minima: the core polytope is empty");
  }
  std::vector<double> minima(core.coalitions.size());
  for (std::size_t row = 0; row < core.coalitions.size(); ++row) {
    LinearProgram lp = core.to_lp();
    lp.objective = indicator_row(core.coalitions[row], core.n);
    const LpOutcome out = solve(lp, feas_tol);
    if (out.status == LpStatus::Unbounded) {
      throw NumericalError("coalition_minima: objective unbounded below; polytope is not bounded on " +
                           core.coalitions[row].to_string());
    }
    if (out.status != LpStatus::Optimal) {
      throw NumericalError("coalition_minima: probe LP failed on " + core.coalitions[row].to_string());
    }
    minima[row] = out.objective_value;
  }
  return minima;
}

}  // namespace corecert
