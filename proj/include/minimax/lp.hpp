#pragma once

// Dense two-phase simplex with Bland's rule. Returns an optimal vertex together
// with the Lagrange multipliers of every constraint row.
//
// Conventions (both senses):
//   minimize  c.x  s.t.  A x <= b  (or = b per row)   L = c.x + lambda.(A x - b)
//   maximize  c.x  s.t.  A x <= b  (or = b per row)   L = c.x - lambda.(A x - b)
// so lambda >= 0 on every <= row and the dual objective is -b.lambda (minimize)
// or b.lambda (maximize). At an optimum the two objectives coincide.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "minimax/matrix.hpp"

namespace minimax {

enum class VariableKind { free, nonnegative };
enum class RowKind { less_equal, equal };
enum class Sense { minimize, maximize };

struct LinearProgram {
  std::vector<double> objective;
  Matrix constraint_matrix;
  std::vector<double> rhs;
  std::vector<VariableKind> variable_kinds;
  std::vector<RowKind> row_kinds;  // empty means every row is <=
  Sense sense = Sense::minimize;

  std::size_t num_variables() const noexcept { return objective.size(); }
  std::size_t num_rows() const noexcept { return rhs.size(); }
  RowKind row_kind(std::size_t i) const { return row_kinds.empty() ? RowKind::less_equal : row_kinds[i]; }

  friend bool operator==(const LinearProgram&, const LinearProgram&) = default;
};

enum class LpStatus { optimal, infeasible, unbounded };

std::string to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> primal;           // length v (empty unless optimal)
  double objective_value = 0.0;         // c.primal
  std::vector<double> dual;             // length r, one multiplier per row
  double dual_objective = 0.0;          // -b.dual (minimize) or b.dual (maximize)
  std::vector<std::size_t> active_rows; // rows tight within feas_tol
  std::size_t iterations = 0;
  std::string reason;                   // certifying explanation for non-optimal status
};

/// Fixed tolerances of the solver.
struct LpTolerances {
  static constexpr double feas_tol = 1e-9;
  static constexpr double duality_gap_rel = 1e-8;
  static constexpr double pivot_tol = 1e-11;
  static constexpr double optimality_tol = 1e-11;

  /// Allowed |primal - dual| objective gap at an optimum.
  static double duality_gap(double objective) noexcept;
};

enum class SolveStrategy {
  automatic,       // tableau on whichever of primal/dual has fewer rows
  primal_tableau,  // always pivot on the LP as given
  dual_tableau,    // pivot on dual_of(lp) and read the primal off its multipliers
};

struct SolveOptions {
  SolveStrategy strategy = SolveStrategy::automatic;
  std::size_t max_iterations = 0;  // 0: 50 * (rows + variables)
};

/// Throws DimensionMismatch on inconsistent shapes, InvalidInput on non-finite entries.
void validate(const LinearProgram& lp);

/// Solve the LP. Throws NumericFailure when the pivot budget runs out.
LpSolution solve_lp(const LinearProgram& lp, const SolveOptions& options = {});

/// The Lagrangian dual, written in the same LinearProgram form.
///
/// minimize c.x, A x (<=,=) b  ->  maximize -b.l  s.t. -A^T l (=,<=) c
/// maximize c.x, A x (<=,=) b  ->  minimize  b.l  s.t. -A^T l (=,<=) -c
/// where a free x_j yields an equality row, x_j >= 0 a <= row, and l_i >= 0 exactly
/// for <= rows of the input. dual_of(dual_of(lp)) == lp.
LinearProgram dual_of(const LinearProgram& lp);

/// Dual objective of a multiplier vector under the conventions above.
double dual_objective(const LinearProgram& lp, std::span<const double> multipliers);

/// Largest violation of the rows of lp at x (0 when feasible).
double max_violation(const LinearProgram& lp, std::span<const double> x);

}  // namespace minimax
