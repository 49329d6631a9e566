#include "corecert/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "corecert/errors.hpp"

namespace corecert {

namespace {

constexpr double kGenerationTol = 1e-11;  // violation level that forces a new row
constexpr int kRowsPerRound = 64;         // most-violated samples admitted per round

// Worst coalition shortfall of sample k at allocation x: the value and the
// row index attaining max_S (u(S, sample k) - sum_{i in S} x_i).
std::pair<double, std::size_t> worst_shortfall(const ScenarioGame& sg, const std::vector<double>& x, int k) {
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t worst_row = 0;
  for (std::size_t row = 0; row < sg.coalitions.size(); ++row) {
    const double shortfall = sg.value(row, k) - coalition_sum(sg.coalitions[row], x);
    if (shortfall > worst) {
      worst = shortfall;
      worst_row = row;
    }
  }
  return {worst, worst_row};
}

// Working set of (coalition row, sample) constraints plus the restricted-LP
// bookkeeping: which samples own a slack variable and at which column.
struct WorkingSet {
  std::set<std::pair<std::size_t, int>> pairs;  // (coalition row, sample k)
  std::vector<int> slack_col;                   // sample -> xi column, -1 if absent
  std::vector<int> referenced;                  // samples with a slack variable, ascending
  int n = 0;

  explicit WorkingSet(const ScenarioGame& sg) : slack_col(static_cast<std::size_t>(sg.num_samples), -1), n(sg.n) {}

  bool insert(std::size_t row, int k) {
    if (!pairs.insert({row, k}).second) return false;
    if (slack_col[static_cast<std::size_t>(k)] < 0) {
      slack_col[static_cast<std::size_t>(k)] = n + static_cast<int>(referenced.size());
      referenced.push_back(k);
    }
    return true;
  }

  std::size_t num_vars() const { return static_cast<std::size_t>(n) + referenced.size(); }
};

struct PassConstraints {
  bool cap_objective = false;
  double objective_cap = 0.0;
  std::vector<std::pair<std::size_t, double>> coordinate_caps;  // (coordinate, upper bound)
};

LinearProgram build_restricted_lp(const ScenarioGame& sg, const WorkingSet& ws, const std::vector<double>& objective,
                                  const PassConstraints& extra) {
  LinearProgram lp;
  const std::size_t nv = ws.num_vars();
  lp.objective = objective;
  lp.objective.resize(nv, 0.0);
  lp.nonneg.assign(nv, true);

  std::vector<double> efficiency(nv, 0.0);
  for (int i = 0; i < sg.n; ++i) efficiency[static_cast<std::size_t>(i)] = 1.0;
  lp.add_eq(std::move(efficiency), sg.grand_value);

  for (const auto& [row, k] : ws.pairs) {
    std::vector<double> coeffs(nv, 0.0);
    for (int i = 0; i < sg.n; ++i) {
      if (sg.coalitions[row].contains(i)) coeffs[static_cast<std::size_t>(i)] = 1.0;
    }
    coeffs[static_cast<std::size_t>(ws.slack_col[static_cast<std::size_t>(k)])] = 1.0;
    lp.add_ge(std::move(coeffs), sg.value(row, k));
  }

  if (extra.cap_objective) {
    std::vector<double> row(nv, 0.0);
    for (std::size_t j = static_cast<std::size_t>(sg.n); j < nv; ++j) row[j] = -1.0;
    lp.add_ge(std::move(row), -extra.objective_cap);
  }
  for (const auto& [coord, cap] : extra.coordinate_caps) {
    std::vector<double> row(nv, 0.0);
    row[coord] = -1.0;
    lp.add_ge(std::move(row), -cap);
  }
  return lp;
}

// Violated (coalition, sample) pairs at (x, xi) that are not yet enforced,
// most violated first; at most kRowsPerRound per call.
struct Candidate {
  double violation;
  int k;
  std::size_t row;
};

std::vector<Candidate> violated_pairs(const ScenarioGame& sg, const WorkingSet& ws, const std::vector<double>& x,
                                      const LpOutcome& out) {
  std::vector<Candidate> candidates;
  for (int k = 0; k < sg.num_samples; ++k) {
    const int col = ws.slack_col[static_cast<std::size_t>(k)];
    const double xi = col >= 0 ? out.solution[static_cast<std::size_t>(col)] : 0.0;
    const auto [shortfall, row] = worst_shortfall(sg, x, k);
    if (shortfall - xi > kGenerationTol && !ws.pairs.count({row, k})) {
      candidates.push_back({shortfall - xi, k, row});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.violation != b.violation) return a.violation > b.violation;
    return a.k < b.k;
  });
  if (candidates.size() > static_cast<std::size_t>(kRowsPerRound)) candidates.resize(static_cast<std::size_t>(kRowsPerRound));
  return candidates;
}

LpOutcome solve_restricted(const ScenarioGame& sg, const WorkingSet& ws, const std::vector<double>& objective,
                           const PassConstraints& extra, double feas_tol) {
  const LpOutcome out = solve(build_restricted_lp(sg, ws, objective, extra), feas_tol);
  if (out.status != LpStatus::Optimal) {
    throw NumericalError("solve_relaxed: restricted program unexpectedly " +
                         std::string(out.status == LpStatus::Infeasible ? "infeasible" : "unbounded"));
  }
  return out;
}

}  // namespace

RelaxationResult solve_relaxed(const ScenarioGame& sg, double feas_tol) {
  WorkingSet ws(sg);
  // Seed with each coalition's sample-wise worst row; for a nonempty
  // scenario core this already certifies zero slack.
  const WorstCaseValues wc = worst_case_values(sg);
  for (std::size_t row = 0; row < sg.coalitions.size(); ++row) ws.insert(row, wc.attaining_index[row]);

  auto slack_objective = [&]() {
    std::vector<double> obj(ws.num_vars(), 0.0);
    for (std::size_t j = static_cast<std::size_t>(sg.n); j < ws.num_vars(); ++j) obj[j] = 1.0;
    return obj;
  };

  // Outer loop: settle the working set under the slack objective, run the
  // lexicographic stack on the settled set, then rescan. Any violation found
  // after the stack reopens the working set and everything is re-solved, so
  // no capped pass ever faces constraints it was not built with (each pass's
  // feasible set contains the previous pass's optimizer by construction).
  std::vector<double> x_final;
  LpOutcome out;
  for (int outer = 0;; ++outer) {
    if (outer > 4 * sg.num_samples + 64) {
      throw NumericalError("solve_relaxed: constraint generation failed to settle");
    }

    PassConstraints none;
    for (int round = 0;; ++round) {
      if (round > 4 * sg.num_samples + 64) {
        throw NumericalError("solve_relaxed: constraint generation failed to settle");
      }
      out = solve_restricted(sg, ws, slack_objective(), none, feas_tol);
      std::vector<double> x(out.solution.begin(), out.solution.begin() + sg.n);
      const auto candidates = violated_pairs(sg, ws, x, out);
      if (candidates.empty()) break;
      for (const auto& c : candidates) ws.insert(c.row, c.k);
    }
    const double optimum = out.objective_value;

    // Lexicographic tie-break on the settled set: cap the slack total, then
    // minimize the coordinates in turn with one-sided caps. The cap absorbs
    // the mass of sub-tolerance violations ignored during generation.
    PassConstraints extra;
    extra.cap_objective = true;
    extra.objective_cap =
        optimum + 1e-10 * (1.0 + std::abs(optimum)) + static_cast<double>(sg.num_samples) * kGenerationTol;
    for (int coord = 0; coord < sg.n; ++coord) {
      std::vector<double> obj(ws.num_vars(), 0.0);
      obj[static_cast<std::size_t>(coord)] = 1.0;
      out = solve_restricted(sg, ws, obj, extra, feas_tol);
      const double level = out.solution[static_cast<std::size_t>(coord)];
      extra.coordinate_caps.push_back({static_cast<std::size_t>(coord), level + 1e-10 * (1.0 + std::abs(level))});
    }
    x_final.assign(out.solution.begin(), out.solution.begin() + sg.n);

    const auto candidates = violated_pairs(sg, ws, x_final, out);
    if (candidates.empty()) break;
    for (const auto& c : candidates) ws.insert(c.row, c.k);
  }

  RelaxationResult result;
  result.x_star = x_final;
  result.xi_star.resize(static_cast<std::size_t>(sg.num_samples));
  double zeta = 0.0;
  bool clean = true;
  for (int k = 0; k < sg.num_samples; ++k) {
    const double xi = std::max(0.0, worst_shortfall(sg, result.x_star, k).first);
    result.xi_star[static_cast<std::size_t>(k)] = xi;
    zeta = std::max(zeta, xi);
    if (xi > feas_tol) clean = false;
  }
  result.zeta_star = zeta;
  result.core_nonempty = clean;
  result.s_star = count_active_samples(sg, result.x_star, feas_tol);
  return result;
}

int count_active_samples(const ScenarioGame& sg, const std::vector<double>& x, double feas_tol) {
  if (x.size() != static_cast<std::size_t>(sg.n)) {
    throw std::invalid_argument("count_active_samples: allocation dimension mismatch");
  }
  int count = 0;
  for (int k = 0; k < sg.num_samples; ++k) {
    if (worst_shortfall(sg, x, k).first >= -feas_tol) ++count;
  }
  return count;
}

CertificateReport certify_relaxed(const RelaxationResult& result, double beta) {
  return make_certificate_report(result.num_samples(), beta, result.s_star);
}

}  // namespace corecert
