#include "corecert/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "corecert/errors.hpp"

namespace corecert {

namespace {

constexpr double kPivotSkipTol = 1e-14;
constexpr double kRatioTol = 1e-9;
constexpr double kReducedCostTol = 1e-9;
constexpr int kStallLimit = 64;

// Dense tableau for the standard-form problem  A w = b, w >= 0.
// One objective row is kept reduced against the current basis.
class SimplexTableau {
 public:
  SimplexTableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * (cols + 1), 0.0), obj_(cols + 1, 0.0), basis_(rows, -1) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return data_[r * (cols_ + 1) + cols_]; }
  double rhs(std::size_t r) const { return data_[r * (cols_ + 1) + cols_]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<int>& basis() { return basis_; }
  const std::vector<double>& obj() const { return obj_; }

  // obj[j] = c[j] - sum_r c[basis(r)] * T[r][j]; obj[cols] accumulates the
  // negated objective value.
  void reset_objective(const std::vector<double>& costs) {
    for (std::size_t j = 0; j <= cols_; ++j) obj_[j] = j < cols_ ? costs[j] : 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = costs[static_cast<std::size_t>(basis_[r])];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) obj_[j] -= cb * data_[r * (cols_ + 1) + j];
    }
  }

  double objective_value() const { return -obj_[cols_]; }

  void pivot(std::size_t prow, std::size_t pcol) {
    double* pr = &data_[prow * (cols_ + 1)];
    const double inv = 1.0 / pr[pcol];
    for (std::size_t j = 0; j <= cols_; ++j) pr[j] *= inv;
    pr[pcol] = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == prow) continue;
      double* row = &data_[r * (cols_ + 1)];
      const double factor = row[pcol];
      if (std::abs(factor) <= kPivotSkipTol) continue;
      for (std::size_t j = 0; j <= cols_; ++j) row[j] -= factor * pr[j];
      row[pcol] = 0.0;
      if (rhs(r) < 0.0 && rhs(r) > -1e-11) rhs(r) = 0.0;
    }
    double ofactor = obj_[pcol];
    if (ofactor != 0.0) {
      for (std::size_t j = 0; j <= cols_; ++j) obj_[j] -= ofactor * pr[j];
      obj_[pcol] = 0.0;
    }
    basis_[prow] = static_cast<int>(pcol);
  }

  // Drops the given rows and every column at index >= keep_cols. All basis
  // indices of surviving rows must lie below keep_cols.
  void compact(const std::vector<bool>& drop_row, std::size_t keep_cols) {
    std::vector<double> data;
    std::vector<int> basis;
    std::size_t kept = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (drop_row[r]) continue;
      for (std::size_t j = 0; j < keep_cols; ++j) data.push_back(at(r, j));
      data.push_back(rhs(r));
      basis.push_back(basis_[r]);
      ++kept;
    }
    rows_ = kept;
    cols_ = keep_cols;
    data_ = std::move(data);
    basis_ = std::move(basis);
    obj_.assign(cols_ + 1, 0.0);
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<double> obj_;
  std::vector<int> basis_;
};

enum class IterateResult { Optimal, Unbounded };

// Runs simplex iterations on a feasible tableau until optimality or
// unboundedness. Largest-coefficient pricing, falling back to Bland's rule
// after a degenerate stall; both rules break ties by index, so the path is
// deterministic.
IterateResult iterate(SimplexTableau& t, std::size_t max_iters, const char* phase_name) {
  const std::size_t cols = t.cols();
  const std::size_t rows = t.rows();
  bool bland = false;
  int stall = 0;
  double last_obj = t.objective_value();

  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    std::size_t pcol = cols;
    if (!bland) {
      double best = -kReducedCostTol;
      for (std::size_t j = 0; j < cols; ++j) {
        if (t.obj()[j] < best) {
          best = t.obj()[j];
          pcol = j;
        }
      }
    } else {
      for (std::size_t j = 0; j < cols; ++j) {
        if (t.obj()[j] < -kReducedCostTol) {
          pcol = j;
          break;
        }
      }
    }
    if (pcol == cols) return IterateResult::Optimal;

    std::size_t prow = rows;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < rows; ++r) {
      const double a = t.at(r, pcol);
      if (a <= kRatioTol) continue;
      const double ratio = t.rhs(r) / a;
      if (ratio < best_ratio - 1e-12) {
        best_ratio = ratio;
        prow = r;
      } else if (prow < rows && ratio < best_ratio + 1e-12) {
        if (bland) {
          if (t.basis()[r] < t.basis()[prow]) prow = r;
        } else if (a > t.at(prow, pcol)) {
          prow = r;
        }
      }
    }
    if (prow == rows) return IterateResult::Unbounded;

    t.pivot(prow, pcol);

    const double obj = t.objective_value();
    if (obj < last_obj - 1e-13 * (1.0 + std::abs(last_obj))) {
      stall = 0;
      bland = false;
    } else if (++stall > kStallLimit) {
      bland = true;
    }
    last_obj = obj;
  }
  throw NumericalError(std::string("simplex: iteration cap reached in ") + phase_name);
}

}  // namespace

LinearProgram LinearProgram::feasibility(std::size_t num_vars) {
  LinearProgram lp;
  lp.objective.assign(num_vars, 0.0);
  lp.nonneg.assign(num_vars, true);
  return lp;
}

double max_violation(const LinearProgram& lp, const std::vector<double>& z) {
  double worst = 0.0;
  auto dot = [&](const std::vector<double>& a) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * z[j];
    return s;
  };
  for (const auto& c : lp.ge) worst = std::max(worst, c.rhs - dot(c.coeffs));
  for (const auto& c : lp.eq) worst = std::max(worst, std::abs(dot(c.coeffs) - c.rhs));
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (lp.nonneg.empty() || lp.nonneg[j]) worst = std::max(worst, -z[j]);
  }
  return worst;
}

LpOutcome solve(const LinearProgram& lp, double feas_tol) {
  const std::size_t nv = lp.num_vars();
  if (!lp.nonneg.empty() && lp.nonneg.size() != nv) {
    throw std::invalid_argument("lp: nonneg flag count does not match variable count");
  }
  for (const auto& c : lp.ge) {
    if (c.coeffs.size() != nv) throw std::invalid_argument("lp: inequality row dimension mismatch");
  }
  for (const auto& c : lp.eq) {
    if (c.coeffs.size() != nv) throw std::invalid_argument("lp: equality row dimension mismatch");
  }

  auto is_nonneg = [&](std::size_t j) { return lp.nonneg.empty() || lp.nonneg[j]; };

  // Free variables split into a difference of two nonnegative columns.
  std::vector<int> plus_col(nv), minus_col(nv, -1);
  std::size_t n_struct = 0;
  for (std::size_t j = 0; j < nv; ++j) {
    plus_col[j] = static_cast<int>(n_struct++);
    if (!is_nonneg(j)) minus_col[j] = static_cast<int>(n_struct++);
  }

  // Rows scaled to unit max-norm, rhs made nonnegative by negation.
  struct Row {
    std::vector<double> a;
    double b = 0.0;
    bool is_eq = false;
    bool negated = false;
  };
  std::vector<Row> rows;
  rows.reserve(lp.ge.size() + lp.eq.size());
  bool trivially_infeasible = false;
  auto append = [&](const LinearConstraint& c, bool is_eq) {
    double scale = 0.0;
    for (double v : c.coeffs) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) {
      if (is_eq ? std::abs(c.rhs) > feas_tol : c.rhs > feas_tol) trivially_infeasible = true;
      return;
    }
    Row row;
    row.is_eq = is_eq;
    row.a.assign(n_struct, 0.0);
    for (std::size_t j = 0; j < nv; ++j) {
      const double v = c.coeffs[j] / scale;
      row.a[static_cast<std::size_t>(plus_col[j])] = v;
      if (minus_col[j] >= 0) row.a[static_cast<std::size_t>(minus_col[j])] = -v;
    }
    row.b = c.rhs / scale;
    if (row.b < 0.0) {
      for (double& v : row.a) v = -v;
      row.b = -row.b;
      row.negated = true;
    }
    rows.push_back(std::move(row));
  };
  for (const auto& c : lp.ge) append(c, false);
  for (const auto& c : lp.eq) append(c, true);
  if (trivially_infeasible) return LpOutcome{LpStatus::Infeasible, {}, 0.0};

  const std::size_t m = rows.size();
  std::vector<int> surplus_col(m, -1), art_col(m, -1);
  std::size_t col = n_struct;
  for (std::size_t r = 0; r < m; ++r) {
    if (!rows[r].is_eq) surplus_col[r] = static_cast<int>(col++);
  }
  const std::size_t phase2_cols = col;
  std::size_t n_art = 0;
  for (std::size_t r = 0; r < m; ++r) {
    // A negated inequality row carries its surplus with coefficient +1, so
    // the surplus can start basic; every other row needs an artificial.
    const bool surplus_is_basis = !rows[r].is_eq && rows[r].negated;
    if (!surplus_is_basis) {
      art_col[r] = static_cast<int>(col++);
      ++n_art;
    }
  }
  const std::size_t total_cols = col;

  SimplexTableau t(m, total_cols);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n_struct; ++j) t.at(r, j) = rows[r].a[j];
    if (surplus_col[r] >= 0) t.at(r, static_cast<std::size_t>(surplus_col[r])) = rows[r].negated ? 1.0 : -1.0;
    if (art_col[r] >= 0) t.at(r, static_cast<std::size_t>(art_col[r])) = 1.0;
    t.rhs(r) = rows[r].b;
    t.basis()[r] = art_col[r] >= 0 ? art_col[r] : surplus_col[r];
  }

  const std::size_t max_iters = 5000 + 60 * (m + total_cols);

  if (n_art > 0) {
    std::vector<double> phase1_costs(total_cols, 0.0);
    for (std::size_t j = phase2_cols; j < total_cols; ++j) phase1_costs[j] = 1.0;
    t.reset_objective(phase1_costs);
    if (iterate(t, max_iters, "phase 1") == IterateResult::Unbounded) {
      throw NumericalError("simplex: phase 1 reported unbounded");
    }
    double max_rhs = 1.0;
    for (std::size_t r = 0; r < m; ++r) max_rhs = std::max(max_rhs, rows[r].b);
    if (t.objective_value() > 1e-8 * max_rhs) return LpOutcome{LpStatus::Infeasible, {}, 0.0};

    // Pivot zero-level artificials out; rows where that is impossible are
    // redundant and get dropped together with the artificial columns.
    std::vector<bool> drop(m, false);
    for (std::size_t r = 0; r < m; ++r) {
      const int b = t.basis()[r];
      if (b < static_cast<int>(phase2_cols)) continue;
      std::size_t pcol = total_cols;
      for (std::size_t j = 0; j < phase2_cols; ++j) {
        if (std::abs(t.at(r, j)) > kRatioTol) {
          pcol = j;
          break;
        }
      }
      if (pcol < total_cols) {
        t.pivot(r, pcol);
      } else {
        drop[r] = true;
      }
    }
    t.compact(drop, phase2_cols);
  }

  std::vector<double> phase2_costs(phase2_cols, 0.0);
  for (std::size_t j = 0; j < nv; ++j) {
    phase2_costs[static_cast<std::size_t>(plus_col[j])] = lp.objective[j];
    if (minus_col[j] >= 0) phase2_costs[static_cast<std::size_t>(minus_col[j])] = -lp.objective[j];
  }
  t.reset_objective(phase2_costs);
  if (iterate(t, max_iters, "phase 2") == IterateResult::Unbounded) {
    return LpOutcome{LpStatus::Unbounded, {}, 0.0};
  }

  std::vector<double> w(phase2_cols, 0.0);
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (t.basis()[r] >= 0) w[static_cast<std::size_t>(t.basis()[r])] = std::max(0.0, t.rhs(r));
  }
  std::vector<double> z(nv, 0.0);
  for (std::size_t j = 0; j < nv; ++j) {
    z[j] = w[static_cast<std::size_t>(plus_col[j])];
    if (minus_col[j] >= 0) z[j] -= w[static_cast<std::size_t>(minus_col[j])];
  }

  double objective_value = 0.0;
  for (std::size_t j = 0; j < nv; ++j) objective_value += lp.objective[j] * z[j];

  if (max_violation(lp, z) > 1e3 * feas_tol) {
    throw NumericalError("simplex: solution failed the feasibility post-check");
  }
  return LpOutcome{LpStatus::Optimal, std::move(z), objective_value};
}

FeasibilityOutcome check_feasible(const LinearProgram& lp, double feas_tol) {
  LinearProgram probe = lp;
  probe.objective.assign(lp.num_vars(), 0.0);
  const LpOutcome out = solve(probe, feas_tol);
  if (out.status == LpStatus::Optimal) return {true, out.solution};
  return {false, std::nullopt};
}

}  // namespace corecert
