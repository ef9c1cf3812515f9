#include "minimax/fit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "minimax/error.hpp"
#include "minimax/simd.hpp"

namespace minimax {

void validate(const ProblemInstance& instance) {
  const std::size_t n = instance.n();
  if (n == 0) throw InvalidInput("instance has no points");
  if (instance.m() == 0) throw InvalidInput("basis is empty");
  if (instance.values.size() != n)
    throw DimensionMismatch(std::to_string(instance.values.size()) + " values for " + std::to_string(n) + " points");
  for (std::size_t i = 0; i < n; ++i) {
    if (instance.points[i].dimension() != instance.p())
      throw DimensionMismatch("point " + std::to_string(i) + " has dimension " +
                              std::to_string(instance.points[i].dimension()) + ", basis expects " +
                              std::to_string(instance.p()));
    for (double c : instance.points[i].coordinates)
      if (!std::isfinite(c)) throw InvalidInput("point " + std::to_string(i) + " has a non-finite coordinate");
    if (!std::isfinite(instance.values[i])) throw InvalidInput("value " + std::to_string(i) + " is not finite");
  }
  if (instance.weights) {
    const auto& w = *instance.weights;
    if (w.size() != n)
      throw DimensionMismatch(std::to_string(w.size()) + " weights for " + std::to_string(n) + " points");
    bool any_positive = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(w[i]) || w[i] < 0.0)
        throw InvalidInput("weight " + std::to_string(i) + " must be finite and non-negative");
      any_positive = any_positive || w[i] > 0.0;
    }
    if (!any_positive) throw InvalidInput("all weights are zero");
  }
  if (!instance.row_scale.empty()) {
    if (instance.row_scale.size() != n)
      throw DimensionMismatch(std::to_string(instance.row_scale.size()) + " row scales for " + std::to_string(n) +
                              " points");
    for (double s : instance.row_scale)
      if (!std::isfinite(s)) throw InvalidInput("row scale is not finite");
  }
}

EffectiveSystem effective_system(const ProblemInstance& instance) {
  validate(instance);
  EffectiveSystem sys{design_matrix(instance.basis, instance.points), instance.values};
  if (!instance.row_scale.empty())
    for (std::size_t i = 0; i < instance.n(); ++i)
      for (double& g : sys.rows.row(i)) g = instance.row_scale[i] * g;
  if (instance.weights) {
    for (std::size_t i = 0; i < instance.n(); ++i) {
      const double w = (*instance.weights)[i];
      for (double& g : sys.rows.row(i)) g = w * g;
      sys.values[i] = w * sys.values[i];
    }
  }
  return sys;
}

namespace {

LinearProgram assemble(const EffectiveSystem& sys) {
  const std::size_t n = sys.rows.rows();
  const std::size_t m = sys.rows.cols();
  LinearProgram lp;
  lp.objective.assign(m + 1, 0.0);
  lp.objective[m] = 1.0;
  lp.variable_kinds.assign(m + 1, VariableKind::free);
  lp.constraint_matrix = Matrix(2 * n, m + 1);
  lp.rhs.resize(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      lp.constraint_matrix(2 * i, j) = sys.rows(i, j);
      lp.constraint_matrix(2 * i + 1, j) = -sys.rows(i, j);
    }
    lp.constraint_matrix(2 * i, m) = -1.0;
    lp.constraint_matrix(2 * i + 1, m) = -1.0;
    lp.rhs[2 * i] = sys.values[i];
    lp.rhs[2 * i + 1] = -sys.values[i];
  }
  return lp;
}

void compute_residuals(const Matrix& columns, std::span<const double> values, std::span<const double> coefficients,
                       std::span<double> out) {
  std::copy(values.begin(), values.end(), out.begin());
  for (std::size_t j = 0; j < columns.rows(); ++j) simd::axpy(-coefficients[j], columns.row(j), out);
}

}  // namespace

LinearProgram assemble_primal(const ProblemInstance& instance) { return assemble(effective_system(instance)); }

FitResult fit(const ProblemInstance& instance, const SolveOptions& options) {
  const EffectiveSystem sys = effective_system(instance);
  const std::size_t n = instance.n();
  const std::size_t m = instance.m();

  FitResult result;
  try {
    result.solution = solve_lp(assemble(sys), options);
  } catch (const NumericFailure& e) {
    throw SolverError(std::string("LP solve failed: ") + e.what() + " after " + std::to_string(e.iterations()) +
                      " iterations");
  }
  if (result.solution.status != LpStatus::optimal)
    throw SolverError("LP solve ended " + to_string(result.solution.status) + ": " + result.solution.reason);

  result.coefficients.assign(result.solution.primal.begin(), result.solution.primal.begin() + m);
  result.discrepancy = std::max(0.0, result.solution.objective_value);

  result.residuals.resize(n);
  compute_residuals(sys.rows.transposed(), sys.values, result.coefficients, result.residuals);

  const double d = result.discrepancy;
  const double tol = active_tolerance(d);
  for (std::size_t i = 0; i < n; ++i)
    if (instance.weight(i) > 0.0 && std::fabs(result.residuals[i]) >= d - tol) result.active_points.push_back(i);

  // Rank over the rows that actually constrain the fit.
  std::size_t live = 0;
  for (std::size_t i = 0; i < n; ++i) live += instance.weight(i) > 0.0 ? 1 : 0;
  Matrix live_rows(live, m);
  for (std::size_t i = 0, k = 0; i < n; ++i)
    if (instance.weight(i) > 0.0) std::copy_n(sys.rows.row(i).begin(), m, live_rows.row(k++).begin());
  result.rank = matrix_rank_estimate(live_rows);
  result.low_rank = result.rank < m;
  result.exact_interpolation = d <= kFeasTol;
  return result;
}

ObjectiveEvaluator::ObjectiveEvaluator(const ProblemInstance& instance) {
  EffectiveSystem sys = effective_system(instance);
  columns_ = sys.rows.transposed();
  values_ = std::move(sys.values);
}

void ObjectiveEvaluator::residuals(std::span<const double> coefficients, std::span<double> out) const {
  if (coefficients.size() != m())
    throw DimensionMismatch(std::to_string(coefficients.size()) + " coefficients for " + std::to_string(m()) +
                            " basis functions");
  compute_residuals(columns_, values_, coefficients, out);
}

double ObjectiveEvaluator::operator()(std::span<const double> coefficients) const {
  std::vector<double> r(n());
  residuals(coefficients, r);
  return simd::max_abs(r);
}

double objective_value(const ProblemInstance& instance, std::span<const double> coefficients) {
  return ObjectiveEvaluator(instance)(coefficients);
}

}  // namespace minimax
