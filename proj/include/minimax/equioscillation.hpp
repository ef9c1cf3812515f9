#pragma once

// Alternation structure of 1-D fits, the one-sided row-flip construction, and a
// numerical verifier for the Lagrange perturbation argument that polynomial best
// approximations equioscillate.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "minimax/fit.hpp"

namespace minimax {

struct ReferenceSet {
  std::vector<std::size_t> indices;  // point indices, sorted by x
  std::vector<int> signs;            // sign of the residual at each index
  double discrepancy = 0.0;
  std::size_t degree = 0;            // t = m - 1 for a polynomial basis
  bool equioscillates = false;       // signs strictly alternate and count >= t + 2
};

/// Active points of a 1-D fit sorted by x. Throws DimensionError for p > 1 and
/// DegenerateCase for an exact interpolation.
ReferenceSet alternation_pattern(const FitResult& fit, const ProblemInstance& instance);

/// True when consecutive signs differ everywhere.
bool strictly_alternating(std::span<const int> signs);

/// Negate design row j and y_j. Requires point j to be an overshoot of the fit
/// (sum_k a_k g_k(x_j) - y_j = d); throws PreconditionError otherwise. The new
/// instance has the same LP up to swapping rows 2j and 2j+1, hence the same
/// optimum, and its residual at j is +d.
ProblemInstance one_sided_construction(const ProblemInstance& instance, const FitResult& fit, std::size_t j);
ProblemInstance one_sided_construction(const ProblemInstance& instance, std::size_t j);

/// Polynomial through (nodes[k], values[k]) in barycentric form.
class LagrangePolynomial {
 public:
  LagrangePolynomial(std::vector<double> nodes, std::vector<double> values);

  double operator()(double x) const;

  std::size_t degree() const noexcept { return nodes_.size() - 1; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& node_values() const noexcept { return values_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
  std::vector<double> weights_;
};

/// Throws DuplicateNodeError when two nodes are closer than 1e-12 * span,
/// DimensionMismatch for unequal lengths or no nodes.
LagrangePolynomial lagrange_interpolate(std::span<const double> nodes, std::span<const double> values);

struct PerturbationStep {
  double new_value_at_next = 0.0;      // f'(z_{j+1}) - f(z_{j+1}), evaluated directly
  double product_formula_value = 0.0;  // s * eps * prod_{i != j, j+1} (z_{j+1} - z_i) / (z_j - z_i)
  bool agrees = false;                 // relative difference <= 1e-8
  bool moves_toward_data = false;      // product has the sign s of the residual pair
};

/// Reference-set values f(z_i) = y_i - s_i d of an unweighted 1-D instance.
std::vector<double> reference_fitted_values(const ReferenceSet& reference, const ProblemInstance& instance);

/// f' interpolates (z_i, f(z_i)) for i != j, j+1 and (z_j, f(z_j) + s eps), where s
/// is the common sign of positions j and j+1 (0-based into the reference set).
/// Requires t + 2 reference points, equal signs at j and j+1 (PreconditionError
/// otherwise) and 0 <= eps <= 0.1 d.
PerturbationStep perturbation_step(const ReferenceSet& reference, const ProblemInstance& instance, std::size_t j,
                                   double epsilon);

struct ReductionStep {
  double delta = 0.0;
  std::vector<double> discrepancies;    // |q_i - f''(z_i)| over the reference set
  double max_reference_discrepancy = 0.0;
  bool reduced = false;                 // max_reference_discrepancy < d
};

/// Second step of the argument: f'' interpolates (z_i, f'(z_i) + delta sgn(q_i - f'(z_i)))
/// for i != j+1. Default delta = min(eps, gap, eps P / L) / 4, where gap = d - (largest
/// off-reference residual), P is the product formula factor and L the absolute Lagrange
/// sum at z_{j+1} over the nodes other than j, j+1.
ReductionStep reduction_step(const ReferenceSet& reference, const ProblemInstance& instance, std::size_t j,
                             double epsilon, std::optional<double> delta = std::nullopt);

}  // namespace minimax
