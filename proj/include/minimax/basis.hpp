#pragma once

// Basis-function lists and the n x m design matrix G(i, j) = basis_j(x_i).
//
// Spec grammar (comma-separated list of expressions):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' ['+' | '-'] integer)?
//   primary := number | variable | ('exp' | 'cos' | 'sin') '(' expr ')' | '(' expr ')'
// Variables are x1..xp; x, y, z alias x1, x2, x3 when p <= 3.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "minimax/matrix.hpp"

namespace minimax {

struct EvaluationPoint {
  std::vector<double> coordinates;

  std::size_t dimension() const noexcept { return coordinates.size(); }
  friend bool operator==(const EvaluationPoint&, const EvaluationPoint&) = default;
};

struct ExprNode {
  enum class Op { constant, variable, add, sub, mul, div, neg, pow, exp, cos, sin };

  Op op = Op::constant;
  double value = 0.0;      // constant
  std::size_t index = 0;   // variable (0-based)
  int exponent = 0;        // pow
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;
};

using ExprPtr = std::shared_ptr<const ExprNode>;

class BasisFunction {
 public:
  BasisFunction(ExprPtr expr, std::string label) : expr_(std::move(expr)), label_(std::move(label)) {}

  /// Throws EvaluationError on division by zero or a non-finite result.
  double evaluate(std::span<const double> x) const;

  const std::string& label() const noexcept { return label_; }
  const ExprPtr& expr() const noexcept { return expr_; }

  /// Fully parenthesized spec text that re-parses to an identical function.
  std::string to_spec() const;

  /// Highest variable index referenced plus one (0 for constants).
  std::size_t arity() const;

 private:
  ExprPtr expr_;
  std::string label_;
};

struct BasisSet {
  std::vector<BasisFunction> functions;
  std::size_t dimension = 1;

  std::size_t size() const noexcept { return functions.size(); }
  std::vector<std::string> labels() const;
  std::string to_spec() const;
};

/// Throws ParseError (with position and expected tokens) or DimensionError.
BasisSet parse_basis_spec(std::string_view text, std::size_t dimension);

/// Throws DimensionMismatch when a point has the wrong dimension and
/// EvaluationError (with point/function indices) when evaluation fails.
Matrix design_matrix(const BasisSet& basis, std::span<const EvaluationPoint> points);

inline constexpr double kRankTol = 1e-10;

/// Numerical rank by Householder QR with column pivoting; pivots below
/// rank_tol * (largest pivot) count as zero.
std::size_t matrix_rank_estimate(const Matrix& matrix, double rank_tol = kRankTol);

}  // namespace minimax
