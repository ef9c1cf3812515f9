#pragma once

// Best uniform approximation of a finite data set:
//
//   minimize over a   max_i  w_i * | y_i - sum_j a_j g_j(x_i) |
//
// assembled as the LP  min z  s.t.  z >= +-(sum_j a_j g_j(x_i) - y_i)  with the
// rows of point i pre-multiplied by w_i when weights are present.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "minimax/basis.hpp"
#include "minimax/lp.hpp"
#include "minimax/matrix.hpp"

namespace minimax {

struct ProblemInstance {
  std::vector<EvaluationPoint> points;
  std::vector<double> values;
  std::optional<std::vector<double>> weights;
  BasisSet basis;
  /// Per-point multiplier on the design row (not on the value). Empty means all 1.
  /// Lets a caller negate or rescale single rows of the design matrix.
  std::vector<double> row_scale;

  std::size_t n() const noexcept { return points.size(); }
  std::size_t m() const noexcept { return basis.size(); }
  std::size_t p() const noexcept { return basis.dimension; }
  bool weighted() const noexcept { return weights.has_value(); }
  double weight(std::size_t i) const { return weights ? (*weights)[i] : 1.0; }
  double scale(std::size_t i) const { return row_scale.empty() ? 1.0 : row_scale[i]; }
};

/// Throws InvalidInput / DimensionMismatch when the instance breaks its invariants.
void validate(const ProblemInstance& instance);

/// Design rows and values after weighting: rows(i, j) = w_i * (s_i * g_j(x_i)), values[i] = w_i * y_i.
struct EffectiveSystem {
  Matrix rows;
  std::vector<double> values;
};

EffectiveSystem effective_system(const ProblemInstance& instance);

inline constexpr double kFeasTol = LpTolerances::feas_tol;

/// Membership threshold for the active set: |r_i| >= d - active_tolerance(d).
inline double active_tolerance(double discrepancy) {
  return 1e-7 * (discrepancy > 1.0 ? discrepancy : 1.0);
}

struct FitResult {
  std::vector<double> coefficients;
  double discrepancy = 0.0;
  /// w_i * (y_i - s_i * sum_j a_j g_j(x_i)); the plain residual when unweighted.
  std::vector<double> residuals;
  std::vector<std::size_t> active_points;
  bool exact_interpolation = false;
  bool low_rank = false;
  std::size_t rank = 0;
  LpSolution solution;
};

/// LP with variables (a_1..a_m, z), all free, and rows 2i / 2i+1 (0-based):
///   +E_i a - z <= +w_i y_i   (overshoot side)
///   -E_i a - z <= -w_i y_i   (undershoot side)
LinearProgram assemble_primal(const ProblemInstance& instance);

/// Throws SolverError if the LP does not reach an optimum.
FitResult fit(const ProblemInstance& instance, const SolveOptions& options = {});

/// Weighted sup-norm of the residual for the given coefficients.
double objective_value(const ProblemInstance& instance, std::span<const double> coefficients);

/// Precomputes the effective system so repeated objective evaluations are cheap.
class ObjectiveEvaluator {
 public:
  explicit ObjectiveEvaluator(const ProblemInstance& instance);

  double operator()(std::span<const double> coefficients) const;
  /// Writes w_i * (y_i - s_i * sum_j a_j g_j(x_i)) into out (length n).
  void residuals(std::span<const double> coefficients, std::span<double> out) const;

  std::size_t n() const noexcept { return values_.size(); }
  std::size_t m() const noexcept { return columns_.rows(); }

 private:
  Matrix columns_;  // m x n, one row per basis function
  std::vector<double> values_;
};

}  // namespace minimax
