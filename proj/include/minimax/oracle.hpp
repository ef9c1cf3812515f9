#pragma once

// Brute-force reference solver for small instances. The optimum of a full-rank
// minimax problem is attained on some m+1 points where the residuals equal +-d,
// so enumerating every (m+1)-subset with every sign pattern and keeping the
// globally feasible candidate of least d recovers it without any LP machinery.

#include <cstddef>
#include <optional>
#include <vector>

#include "minimax/fit.hpp"
#include "minimax/matrix.hpp"

namespace minimax {

struct OracleResult {
  std::vector<double> coefficients;
  double discrepancy = 0.0;
  std::vector<std::size_t> witness_subset;  // m+1 point indices, ascending
  std::vector<int> witness_signs;           // s_i with sum_j a_j g_j(x_i) + s_i d = y_i
};

inline constexpr std::size_t kOracleMaxPoints = 15;
inline constexpr std::size_t kOracleMaxFunctions = 4;
inline constexpr double kOracleSlack = 1e-9;

/// Throws TooLarge beyond n <= 15, m <= 4 and NoCandidate when no witness
/// system is solvable and feasible. Weights are folded into the rows.
OracleResult brute_force_fit(const ProblemInstance& instance);

/// Gaussian elimination with partial pivoting; nullopt when a pivot is below
/// 1e-12 times the largest entry of the matrix.
std::optional<std::vector<double>> solve_dense(Matrix a, std::vector<double> b);

}  // namespace minimax

namespace minimax {

struct OracleComparison {
  double discrepancy_difference = 0.0;   // |d_lp - d_oracle|
  double coefficient_difference = 0.0;   // max_k |a_lp - a_oracle|
  bool coefficients_agree = false;       // coefficient_difference <= 1e-7
  bool both_optimal = false;             // each coefficient vector attains the other's d within 1e-8
  bool agrees = false;
};

inline constexpr double kOracleDiscrepancyTol = 1e-8;
inline constexpr double kOracleCoefficientTol = 1e-7;

/// Discrepancies must match; coefficients must match unless the optimum is not
/// unique, in which case both coefficient vectors must attain it.
OracleComparison compare_with_oracle(const FitResult& fit, const OracleResult& oracle,
                                     const ProblemInstance& instance);

}  // namespace minimax
