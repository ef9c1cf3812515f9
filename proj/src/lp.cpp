#include "minimax/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "minimax/error.hpp"
#include "minimax/simd.hpp"

namespace minimax {

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal:
      return "optimal";
    case LpStatus::infeasible:
      return "infeasible";
    case LpStatus::unbounded:
      return "unbounded";
  }
  return "unknown";
}

double LpTolerances::duality_gap(double objective) noexcept {
  return duality_gap_rel * std::max(1.0, std::fabs(objective));
}

void validate(const LinearProgram& lp) {
  const std::size_t v = lp.num_variables();
  const std::size_t r = lp.num_rows();
  if (v == 0 || r == 0) throw DimensionMismatch("linear program needs at least one row and one variable");
  if (lp.constraint_matrix.rows() != r || lp.constraint_matrix.cols() != v)
    throw DimensionMismatch("constraint matrix is " + std::to_string(lp.constraint_matrix.rows()) + "x" +
                            std::to_string(lp.constraint_matrix.cols()) + ", expected " + std::to_string(r) +
                            "x" + std::to_string(v));
  if (lp.variable_kinds.size() != v)
    throw DimensionMismatch("variable_kinds has " + std::to_string(lp.variable_kinds.size()) +
                            " entries, expected " + std::to_string(v));
  if (!lp.row_kinds.empty() && lp.row_kinds.size() != r)
    throw DimensionMismatch("row_kinds has " + std::to_string(lp.row_kinds.size()) + " entries, expected " +
                            std::to_string(r));
  auto finite = [](std::span<const double> xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
  };
  if (!finite(lp.objective) || !finite(lp.rhs) || !finite(lp.constraint_matrix.data()))
    throw InvalidInput("linear program has non-finite entries");
}

LinearProgram dual_of(const LinearProgram& lp) {
  validate(lp);
  const std::size_t v = lp.num_variables();
  const std::size_t r = lp.num_rows();
  LinearProgram d;
  d.sense = lp.sense == Sense::minimize ? Sense::maximize : Sense::minimize;
  d.constraint_matrix = Matrix(v, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < v; ++j) d.constraint_matrix(j, i) = -lp.constraint_matrix(i, j);
  d.rhs.resize(v);
  d.row_kinds.resize(v);
  for (std::size_t j = 0; j < v; ++j) {
    d.rhs[j] = lp.sense == Sense::minimize ? lp.objective[j] : -lp.objective[j];
    d.row_kinds[j] = lp.variable_kinds[j] == VariableKind::free ? RowKind::equal : RowKind::less_equal;
  }
  d.objective.resize(r);
  d.variable_kinds.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    d.objective[i] = lp.sense == Sense::minimize ? -lp.rhs[i] : lp.rhs[i];
    d.variable_kinds[i] =
        lp.row_kind(i) == RowKind::equal ? VariableKind::free : VariableKind::nonnegative;
  }
  if (std::all_of(d.row_kinds.begin(), d.row_kinds.end(), [](RowKind k) { return k == RowKind::less_equal; }))
    d.row_kinds.clear();
  return d;
}

double dual_objective(const LinearProgram& lp, std::span<const double> multipliers) {
  const double s = simd::dot(lp.rhs, multipliers);
  return lp.sense == Sense::minimize ? -s : s;
}

double max_violation(const LinearProgram& lp, std::span<const double> x) {
  double worst = 0.0;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    const double slack = lp.rhs[i] - simd::dot(lp.constraint_matrix.row(i), x);
    const double viol = lp.row_kind(i) == RowKind::equal ? std::fabs(slack) : -slack;
    worst = std::max(worst, viol);
  }
  for (std::size_t j = 0; j < lp.num_variables(); ++j)
    if (lp.variable_kinds[j] == VariableKind::nonnegative) worst = std::max(worst, -x[j]);
  return worst;
}

namespace {

// Standard-form tableau: rows are the LP rows (sign-normalized to rhs >= 0) with
// one slack per <= row and one artificial per row; the last row holds reduced
// costs and -objective.
class Tableau {
 public:
  Tableau(const LinearProgram& lp, std::size_t max_iterations) : lp_(lp), max_iterations_(max_iterations) {
    const std::size_t v = lp.num_variables();
    rows_ = lp.num_rows();

    pos_col_.resize(v);
    neg_col_.assign(v, npos);
    std::size_t col = 0;
    for (std::size_t j = 0; j < v; ++j) {
      pos_col_[j] = col++;
      if (lp.variable_kinds[j] == VariableKind::free) neg_col_[j] = col++;
    }
    slack_col_.assign(rows_, npos);
    for (std::size_t i = 0; i < rows_; ++i)
      if (lp.row_kind(i) == RowKind::less_equal) slack_col_[i] = col++;
    first_artificial_ = col;
    cols_ = col + rows_;

    cost_.assign(cols_, 0.0);
    const double sense = lp.sense == Sense::minimize ? 1.0 : -1.0;
    for (std::size_t j = 0; j < v; ++j) {
      cost_[pos_col_[j]] = sense * lp.objective[j];
      if (neg_col_[j] != npos) cost_[neg_col_[j]] = -sense * lp.objective[j];
    }

    t_ = Matrix(rows_ + 1, cols_ + 1);
    row_sign_.assign(rows_, 1.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const double s = lp.rhs[i] < 0.0 ? -1.0 : 1.0;
      row_sign_[i] = s;
      for (std::size_t j = 0; j < v; ++j) {
        const double a = s * lp.constraint_matrix(i, j);
        t_(i, pos_col_[j]) = a;
        if (neg_col_[j] != npos) t_(i, neg_col_[j]) = -a;
      }
      if (slack_col_[i] != npos) t_(i, slack_col_[i]) = s;
      t_(i, first_artificial_ + i) = 1.0;
      t_(i, cols_) = s * lp.rhs[i];
    }
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) basis_[i] = first_artificial_ + i;
    allowed_.assign(cols_, true);
    original_ = t_;
  }

  LpSolution solve() {
    LpSolution sol;

    // Phase 1: minimize the sum of artificials.
    phase_cost_.assign(cols_, 0.0);
    for (std::size_t j = first_artificial_; j < cols_; ++j) phase_cost_[j] = 1.0;
    price();
    if (!converge()) throw SolverError("phase 1 reported unbounded, which cannot happen");
    const double infeasibility = -t_(rows_, cols_);
    double rhs_scale = 1.0;
    for (double b : lp_.rhs) rhs_scale = std::max(rhs_scale, std::fabs(b));
    if (infeasibility > LpTolerances::feas_tol * rhs_scale) {
      sol.status = LpStatus::infeasible;
      sol.iterations = iterations_;
      sol.reason = "phase 1 minimum of artificial sum is " + std::to_string(infeasibility) + " > 0";
      return sol;
    }
    drive_out_artificials();

    // Phase 2.
    for (std::size_t j = first_artificial_; j < cols_; ++j) allowed_[j] = false;
    phase_cost_ = cost_;
    price();
    if (!converge()) {
      sol.status = LpStatus::unbounded;
      sol.iterations = iterations_;
      sol.reason = "column " + std::to_string(unbounded_column_) +
                   " has negative reduced cost and no positive pivot entry (improving ray)";
      return sol;
    }

    std::vector<double> value(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) value[basis_[i]] = t_(i, cols_);
    const std::size_t v = lp_.num_variables();
    sol.primal.resize(v);
    for (std::size_t j = 0; j < v; ++j) {
      double x = value[pos_col_[j]];
      if (neg_col_[j] != npos) x -= value[neg_col_[j]];
      sol.primal[j] = x;
    }
    sol.dual.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      double lambda = row_sign_[i] * t_(rows_, first_artificial_ + i);
      if (lp_.row_kind(i) == RowKind::less_equal && lambda < 0.0 && lambda > -LpTolerances::feas_tol)
        lambda = 0.0;
      sol.dual[i] = lambda;
    }
    sol.status = LpStatus::optimal;
    sol.iterations = iterations_;
    return sol;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  static constexpr int kMaxRefinements = 4;
  static constexpr std::size_t kRefactorInterval = 64;

  // Reduced-cost row for phase_cost_ against the current basis.
  void price() {
    for (std::size_t j = 0; j <= cols_; ++j) {
      double s = j < cols_ ? phase_cost_[j] : 0.0;
      for (std::size_t i = 0; i < rows_; ++i) s -= phase_cost_[basis_[i]] * t_(i, j);
      t_(rows_, j) = s;
    }
  }

  // Rebuild the tableau as B^-1 A from the original data so rounding picked up
  // over many pivots does not leak into the answer. False if B is singular.
  bool refactor() {
    since_refactor_ = 0;
    const std::size_t w = cols_ + 1;
    Matrix b(rows_, rows_);
    Matrix rhs(rows_, w);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < rows_; ++k) b(i, k) = original_(i, basis_[k]);
      for (std::size_t j = 0; j < w; ++j) rhs(i, j) = original_(i, j);
    }
    // Gauss-Jordan with partial pivoting; row k of the result belongs to basis_[k].
    for (std::size_t k = 0; k < rows_; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < rows_; ++i)
        if (std::fabs(b(i, k)) > std::fabs(b(p, k))) p = i;
      if (std::fabs(b(p, k)) < 1e-13) return false;
      if (p != k) {
        for (std::size_t j = 0; j < rows_; ++j) std::swap(b(p, j), b(k, j));
        for (std::size_t j = 0; j < w; ++j) std::swap(rhs(p, j), rhs(k, j));
      }
      const double inv = 1.0 / b(k, k);
      for (double& x : b.row(k)) x *= inv;
      for (double& x : rhs.row(k)) x *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == k) continue;
        const double f = b(i, k);
        if (f == 0.0) continue;
        simd::axpy(-f, b.row(k), b.row(i));
        simd::axpy(-f, rhs.row(k), rhs.row(i));
      }
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      auto dst = t_.row(i);
      auto src = rhs.row(i);
      std::copy(src.begin(), src.end(), dst.begin());
      t_(i, basis_[i]) = 1.0;
    }
    price();
    return true;
  }

  // Iterate, then refactor and resume until a fresh tableau needs no more pivots.
  bool converge() {
    bool ok = iterate();
    for (int pass = 0; pass < kMaxRefinements; ++pass) {
      if (!refactor()) break;
      const std::size_t before = iterations_;
      ok = iterate();
      if (iterations_ == before) break;
    }
    return ok;
  }

  void pivot(std::size_t r, std::size_t c) {
    auto prow = t_.row(r);
    const double p = prow[c];
    for (double& x : prow) x /= p;
    prow[c] = 1.0;
    for (std::size_t k = 0; k <= rows_; ++k) {
      if (k == r) continue;
      const double f = t_(k, c);
      if (f == 0.0) continue;
      simd::axpy(-f, prow, t_.row(k));
      t_(k, c) = 0.0;
    }
    basis_[r] = c;
    if (++since_refactor_ >= kRefactorInterval) refactor();
    if (++iterations_ > max_iterations_)
      throw NumericFailure("simplex exceeded " + std::to_string(max_iterations_) + " pivots", iterations_);
  }

  // Bland's rule until optimal (true) or an improving ray is found (false).
  bool iterate() {
    for (;;) {
      std::size_t enter = npos;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (allowed_[j] && t_(rows_, j) < -LpTolerances::optimality_tol) {
          enter = j;
          break;
        }
      }
      if (enter == npos) return true;

      std::size_t leave = npos;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = t_(i, enter);
        if (a <= LpTolerances::pivot_tol) continue;
        const double ratio = std::max(0.0, t_(i, cols_)) / a;
        const double tie = 1e-12 * std::max(1.0, std::fabs(best));
        if (leave == npos || ratio < best - tie) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + tie && basis_[i] < basis_[leave]) {
          leave = i;
        }
      }
      if (leave == npos) {
        unbounded_column_ = enter;
        return false;
      }
      pivot(leave, enter);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      std::size_t best = npos;
      double best_abs = LpTolerances::pivot_tol;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        const double a = std::fabs(t_(i, j));
        if (a > best_abs) {
          best_abs = a;
          best = j;
        }
      }
      // A row with no usable entry is redundant; its artificial stays basic at zero.
      if (best != npos) pivot(i, best);
    }
  }

  const LinearProgram& lp_;
  std::size_t max_iterations_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<std::size_t> pos_col_, neg_col_, slack_col_;
  std::vector<double> cost_;
  std::vector<double> row_sign_;
  std::vector<double> phase_cost_;
  Matrix t_;
  Matrix original_;
  std::vector<std::size_t> basis_;
  std::size_t since_refactor_ = 0;
  std::vector<bool> allowed_;
  std::size_t iterations_ = 0;
  std::size_t unbounded_column_ = 0;
};

void finish(const LinearProgram& lp, LpSolution& sol) {
  if (sol.status != LpStatus::optimal) return;
  sol.objective_value = simd::dot(lp.objective, sol.primal);
  sol.dual_objective = dual_objective(lp, sol.dual);
  sol.active_rows.clear();
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    const double slack = lp.rhs[i] - simd::dot(lp.constraint_matrix.row(i), sol.primal);
    if (lp.row_kind(i) == RowKind::equal ||
        std::fabs(slack) <= LpTolerances::feas_tol * std::max(1.0, std::fabs(lp.rhs[i])))
      sol.active_rows.push_back(i);
  }
}

LpSolution solve_primal(const LinearProgram& lp, std::size_t budget) {
  Tableau t(lp, budget);
  LpSolution sol = t.solve();
  finish(lp, sol);
  return sol;
}

LpSolution solve_via_dual(const LinearProgram& lp, std::size_t budget) {
  const LinearProgram d = dual_of(lp);
  Tableau t(d, budget);
  LpSolution ds = t.solve();
  if (ds.status == LpStatus::unbounded) {
    LpSolution sol;
    sol.status = LpStatus::infeasible;
    sol.iterations = ds.iterations;
    sol.reason = "dual is unbounded (" + ds.reason + "), so the primal is infeasible";
    return sol;
  }
  if (ds.status == LpStatus::infeasible) {
    // Primal is infeasible or unbounded; the primal tableau tells which.
    LpSolution sol = solve_primal(lp, budget);
    sol.iterations += ds.iterations;
    if (sol.status == LpStatus::unbounded) sol.reason += "; dual is infeasible";
    return sol;
  }
  LpSolution sol;
  sol.status = LpStatus::optimal;
  sol.primal = std::move(ds.dual);
  sol.dual = std::move(ds.primal);
  sol.iterations = ds.iterations;
  for (std::size_t i = 0; i < lp.num_rows(); ++i)
    if (lp.row_kind(i) == RowKind::less_equal && sol.dual[i] < 0.0) sol.dual[i] = 0.0;
  finish(lp, sol);
  return sol;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SolveOptions& options) {
  validate(lp);
  const std::size_t budget =
      options.max_iterations != 0 ? options.max_iterations : 50 * (lp.num_rows() + lp.num_variables());
  SolveStrategy strategy = options.strategy;
  if (strategy == SolveStrategy::automatic)
    strategy = lp.num_rows() > lp.num_variables() ? SolveStrategy::dual_tableau : SolveStrategy::primal_tableau;
  return strategy == SolveStrategy::dual_tableau ? solve_via_dual(lp, budget) : solve_primal(lp, budget);
}

}  // namespace minimax
