#pragma once

// Dual certificates of a minimax fit and mechanical checks of the structural
// facts they imply.
//
// Row layout follows assemble_primal: for point i (0-based) row 2i is the
// overshoot row (tight when sum_j a_j g_j(x_i) - y_i = d, residual -d) and row
// 2i+1 the undershoot row (tight when the residual is +d). In 1-based terms the
// odd rows are overshoot rows and the even rows undershoot rows.

#include <cstddef>
#include <optional>
#include <vector>

#include "minimax/fit.hpp"
#include "minimax/lp.hpp"

namespace minimax {

struct DualCertificate {
  std::vector<double> beta;  // length 2n, beta >= 0
  double odd_sum = 0.0;      // sum over overshoot rows (1-based odd)
  double even_sum = 0.0;     // sum over undershoot rows (1-based even)
  double dual_objective = 0.0;
};

/// Tolerance for the linear identities the certificate must satisfy.
inline double certificate_tolerance(double discrepancy) {
  return 1e-8 * (discrepancy > 1.0 ? discrepancy : 1.0);
}

inline constexpr double kNormalizationTol = 1e-9;
inline constexpr double kMultiplierThreshold = 1e-9;

struct CertificateReport {
  // (a) strong duality, canonical sign: sum_even b y - sum_odd b y - d.
  double strong_duality_gap = 0.0;
  // (a) with the opposite sign convention: sum_odd b y - sum_even b y. Equals -d
  // under the row layout above.
  double identity_a_swapped_sign = 0.0;
  // (d) sum b - 1.
  double normalization_residual = 0.0;
  // (b)/(c) rows with b_i > kMultiplierThreshold whose residual is not +-d.
  std::size_t nonzero_multipliers = 0;
  std::size_t complementarity_violations = 0;
  // (e) per basis function: sum_odd b g_k - sum_even b g_k.
  std::vector<double> orthogonality_residuals;
  // (f) a_k times (e)_k.
  std::vector<double> weighted_orthogonality;
  // (g) sum_odd b f - sum_even b f with f the fitted combination.
  double identity_g_residual = 0.0;
  // (h) sum_odd b (f - y) + sum_even b (y - f) - d.
  double identity_h_residual = 0.0;

  std::size_t theorem1_active_count = 0;
  bool theorem1_pass = false;
  std::optional<bool> theorem2_pass;  // only when g_1 is identically 1

  bool duality_pass = false;
  bool normalization_pass = false;
  bool complementarity_pass = false;
  bool orthogonality_pass = false;
  bool identity_g_pass = false;
  bool identity_h_pass = false;

  bool all_pass() const noexcept {
    return duality_pass && normalization_pass && complementarity_pass && orthogonality_pass && identity_g_pass &&
           identity_h_pass && theorem1_pass && theorem2_pass.value_or(true);
  }
};

/// Throws DegenerateCase for exact interpolation or a rank-deficient design,
/// PreconditionError when the solution is not optimal or has the wrong size.
DualCertificate extract_certificate(const LpSolution& solution, const ProblemInstance& instance);

CertificateReport verify_identities(const DualCertificate& cert, const FitResult& fit,
                                    const ProblemInstance& instance);

/// At least m+1 points attain the discrepancy. Throws DegenerateCase.
bool check_theorem1(const FitResult& fit, std::size_t m);

/// True when the first basis function is exactly 1 at every point of an
/// unweighted instance with unit row scales.
bool has_constant_first_function(const ProblemInstance& instance);

/// One residual at +d, one at -d, and both multiplier halves equal 1/2.
/// Throws PreconditionError unless has_constant_first_function(instance),
/// DegenerateCase for degenerate fits.
bool check_theorem2(const FitResult& fit, const DualCertificate& cert, const ProblemInstance& instance);

}  // namespace minimax
