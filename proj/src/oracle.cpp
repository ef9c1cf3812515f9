#include "minimax/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "minimax/error.hpp"

namespace minimax {

std::optional<std::vector<double>> solve_dense(Matrix a, std::vector<double> b) {
  const std::size_t n = a.rows();
  double scale = 0.0;
  for (double v : a.data()) scale = std::max(scale, std::fabs(v));
  if (scale == 0.0) return std::nullopt;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(a(i, k)) > std::fabs(a(p, k))) p = i;
    if (std::fabs(a(p, k)) <= 1e-12 * scale) return std::nullopt;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(b[k], b[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a(k, j) * x[j];
    x[k] = s / a(k, k);
  }
  return x;
}

namespace {

// Advance to the next k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

OracleResult brute_force_fit(const ProblemInstance& instance) {
  validate(instance);
  const std::size_t n = instance.n();
  const std::size_t m = instance.m();
  if (n > kOracleMaxPoints || m > kOracleMaxFunctions)
    throw TooLarge("oracle handles n <= " + std::to_string(kOracleMaxPoints) + " and m <= " +
                   std::to_string(kOracleMaxFunctions) + ", got n = " + std::to_string(n) +
                   ", m = " + std::to_string(m));
  const std::size_t k = m + 1;
  if (n < k) throw NoCandidate("fewer points than basis functions plus one");

  // Rows w_i * s_i * g(x_i) and values w_i * y_i, built here independently of the LP path.
  Matrix g = design_matrix(instance.basis, instance.points);
  std::vector<double> y = instance.values;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = instance.weight(i);
    const double s = instance.scale(i);
    for (std::size_t j = 0; j < m; ++j) g(i, j) = w * (s * g(i, j));
    y[i] = w * y[i];
  }

  std::optional<OracleResult> best;
  std::vector<std::size_t> subset(k);
  for (std::size_t i = 0; i < k; ++i) subset[i] = i;
  do {
    for (std::size_t pattern = 0; pattern < (std::size_t{1} << k); ++pattern) {
      Matrix a(k, k);
      std::vector<double> b(k);
      std::vector<int> signs(k);
      for (std::size_t r = 0; r < k; ++r) {
        signs[r] = (pattern >> r) & 1 ? 1 : -1;
        for (std::size_t j = 0; j < m; ++j) a(r, j) = g(subset[r], j);
        a(r, m) = signs[r];
        b[r] = y[subset[r]];
      }
      const auto sol = solve_dense(std::move(a), std::move(b));
      if (!sol) continue;
      const double d = (*sol)[m];
      if (d < -1e-12) continue;
      bool feasible = true;
      for (std::size_t i = 0; i < n && feasible; ++i) {
        double f = 0.0;
        for (std::size_t j = 0; j < m; ++j) f += (*sol)[j] * g(i, j);
        feasible = std::fabs(y[i] - f) <= std::max(d, 0.0) + kOracleSlack;
      }
      if (!feasible) continue;
      const double dd = std::max(d, 0.0);
      // Strict improvement keeps the lexicographically first witness among ties.
      if (!best || dd < best->discrepancy - 1e-12 * std::max(1.0, best->discrepancy)) {
        best = OracleResult{{sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(m)}, dd, subset, signs};
      }
    }
  } while (next_combination(subset, n));

  if (!best) throw NoCandidate("no nonsingular feasible witness system (rank-deficient design?)");
  return *best;
}

}  // namespace minimax

namespace minimax {

OracleComparison compare_with_oracle(const FitResult& fit, const OracleResult& oracle,
                                     const ProblemInstance& instance) {
  OracleComparison c;
  c.discrepancy_difference = std::fabs(fit.discrepancy - oracle.discrepancy);
  for (std::size_t k = 0; k < fit.coefficients.size(); ++k)
    c.coefficient_difference =
        std::max(c.coefficient_difference, std::fabs(fit.coefficients[k] - oracle.coefficients[k]));
  c.coefficients_agree = c.coefficient_difference <= kOracleCoefficientTol;
  const ObjectiveEvaluator objective(instance);
  c.both_optimal = objective(oracle.coefficients) <= fit.discrepancy + kOracleDiscrepancyTol &&
                   objective(fit.coefficients) <= oracle.discrepancy + kOracleDiscrepancyTol;
  c.agrees = c.discrepancy_difference <= kOracleDiscrepancyTol && (c.coefficients_agree || c.both_optimal);
  return c;
}

}  // namespace minimax
