#include "minimax/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "minimax/error.hpp"

namespace minimax {

namespace {

void require_nondegenerate(const FitResult& fit) {
  if (fit.exact_interpolation) throw DegenerateCase("fit interpolates the data exactly (discrepancy 0)");
  if (fit.low_rank)
    throw DegenerateCase("design matrix has numerical rank " + std::to_string(fit.rank) + " < " +
                         std::to_string(fit.coefficients.size()));
}

}  // namespace

DualCertificate extract_certificate(const LpSolution& solution, const ProblemInstance& instance) {
  if (solution.status != LpStatus::optimal) throw PreconditionError("certificate needs an optimal LP solution");
  const std::size_t n = instance.n();
  if (solution.dual.size() != 2 * n)
    throw PreconditionError("solution has " + std::to_string(solution.dual.size()) + " multipliers, expected " +
                            std::to_string(2 * n));
  const EffectiveSystem sys = effective_system(instance);
  if (solution.objective_value <= kFeasTol) throw DegenerateCase("fit interpolates the data exactly (discrepancy 0)");
  std::size_t live = 0;
  for (std::size_t i = 0; i < n; ++i) live += instance.weight(i) > 0.0 ? 1 : 0;
  Matrix live_rows(live, instance.m());
  for (std::size_t i = 0, k = 0; i < n; ++i)
    if (instance.weight(i) > 0.0) std::copy_n(sys.rows.row(i).begin(), instance.m(), live_rows.row(k++).begin());
  if (matrix_rank_estimate(live_rows) < instance.m()) throw DegenerateCase("design matrix is rank deficient");

  DualCertificate cert;
  cert.beta = solution.dual;
  for (std::size_t i = 0; i < n; ++i) {
    cert.odd_sum += cert.beta[2 * i];
    cert.even_sum += cert.beta[2 * i + 1];
    cert.dual_objective += sys.values[i] * (cert.beta[2 * i + 1] - cert.beta[2 * i]);
  }
  return cert;
}

CertificateReport verify_identities(const DualCertificate& cert, const FitResult& fit,
                                    const ProblemInstance& instance) {
  require_nondegenerate(fit);
  const std::size_t n = instance.n();
  const std::size_t m = instance.m();
  if (cert.beta.size() != 2 * n || fit.residuals.size() != n || fit.coefficients.size() != m)
    throw DimensionMismatch("certificate, fit and instance sizes disagree");

  const EffectiveSystem sys = effective_system(instance);
  const double d = fit.discrepancy;
  const double tol = certificate_tolerance(d);
  const double tight_tol = active_tolerance(d);

  CertificateReport rep;
  double odd_y = 0.0, even_y = 0.0, sum_b = 0.0, g_sum = 0.0, h_sum = 0.0;
  rep.orthogonality_residuals.assign(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double bo = cert.beta[2 * i];
    const double be = cert.beta[2 * i + 1];
    odd_y += bo * sys.values[i];
    even_y += be * sys.values[i];
    sum_b += bo + be;
    double fitted = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      rep.orthogonality_residuals[k] += (bo - be) * sys.rows(i, k);
      fitted += fit.coefficients[k] * sys.rows(i, k);
    }
    g_sum += (bo - be) * fitted;
    h_sum += bo * (fitted - sys.values[i]) + be * (sys.values[i] - fitted);

    // (b): overshoot row tight means residual -d; (c): undershoot row, residual +d.
    const double r = fit.residuals[i];
    if (bo > kMultiplierThreshold) {
      ++rep.nonzero_multipliers;
      if (std::fabs(r + d) > tight_tol) ++rep.complementarity_violations;
    }
    if (be > kMultiplierThreshold) {
      ++rep.nonzero_multipliers;
      if (std::fabs(r - d) > tight_tol) ++rep.complementarity_violations;
    }
  }
  rep.strong_duality_gap = (even_y - odd_y) - d;
  rep.identity_a_swapped_sign = odd_y - even_y;
  rep.normalization_residual = sum_b - 1.0;
  rep.weighted_orthogonality.resize(m);
  for (std::size_t k = 0; k < m; ++k)
    rep.weighted_orthogonality[k] = fit.coefficients[k] * rep.orthogonality_residuals[k];
  rep.identity_g_residual = g_sum;
  rep.identity_h_residual = h_sum - d;

  rep.duality_pass = std::fabs(rep.strong_duality_gap) <= tol;
  rep.normalization_pass = std::fabs(rep.normalization_residual) <= kNormalizationTol;
  rep.complementarity_pass = rep.complementarity_violations == 0;
  rep.orthogonality_pass = std::all_of(rep.orthogonality_residuals.begin(), rep.orthogonality_residuals.end(),
                                       [&](double e) { return std::fabs(e) <= tol; });
  double max_alpha = 0.0;
  for (double a : fit.coefficients) max_alpha = std::max(max_alpha, std::fabs(a));
  rep.identity_g_pass = std::fabs(rep.identity_g_residual) <= tol * std::max(1.0, max_alpha) * static_cast<double>(m);
  rep.identity_h_pass = std::fabs(rep.identity_h_residual) <= tol;

  rep.theorem1_active_count = fit.active_points.size();
  rep.theorem1_pass = check_theorem1(fit, m);
  if (has_constant_first_function(instance)) rep.theorem2_pass = check_theorem2(fit, cert, instance);
  return rep;
}

bool check_theorem1(const FitResult& fit, std::size_t m) {
  require_nondegenerate(fit);
  const double d = fit.discrepancy;
  const double tol = active_tolerance(d);
  if (fit.active_points.size() < m + 1) return false;
  return std::all_of(fit.active_points.begin(), fit.active_points.end(),
                     [&](std::size_t i) { return std::fabs(std::fabs(fit.residuals[i]) - d) <= tol; });
}

bool has_constant_first_function(const ProblemInstance& instance) {
  if (instance.m() == 0 || instance.weighted()) return false;
  for (std::size_t i = 0; i < instance.n(); ++i) {
    if (instance.scale(i) != 1.0) return false;
    double g = 0.0;
    try {
      g = instance.basis.functions[0].evaluate(instance.points[i].coordinates);
    } catch (const EvaluationError&) {
      return false;
    }
    if (g != 1.0) return false;
  }
  return true;
}

bool check_theorem2(const FitResult& fit, const DualCertificate& cert, const ProblemInstance& instance) {
  if (!has_constant_first_function(instance))
    throw PreconditionError("first basis function is not identically 1 on the points (or instance is weighted)");
  require_nondegenerate(fit);
  const double d = fit.discrepancy;
  const double tol = active_tolerance(d);
  bool above = false, below = false;
  for (double r : fit.residuals) {
    above = above || std::fabs(r - d) <= tol;
    below = below || std::fabs(r + d) <= tol;
  }
  return above && below && std::fabs(cert.odd_sum - 0.5) <= kNormalizationTol &&
         std::fabs(cert.even_sum - 0.5) <= kNormalizationTol;
}

}  // namespace minimax
