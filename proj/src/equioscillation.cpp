#include "minimax/equioscillation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "minimax/error.hpp"

namespace minimax {

namespace {

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

void require_1d(const ProblemInstance& instance) {
  if (instance.p() != 1)
    throw DimensionError("alternation analysis needs 1-D points, instance has dimension " +
                         std::to_string(instance.p()));
}

double coordinate(const ProblemInstance& instance, std::size_t i) { return instance.points[i].coordinates[0]; }

// l_i(x) over the given nodes.
double lagrange_basis(std::span<const double> nodes, std::size_t i, double x) {
  double v = 1.0;
  for (std::size_t k = 0; k < nodes.size(); ++k)
    if (k != i) v *= (x - nodes[k]) / (nodes[i] - nodes[k]);
  return v;
}

struct FirstStep {
  std::vector<double> z;          // reference abscissae
  std::vector<double> f;          // f(z_i)
  int side = 0;                   // common sign at j, j+1
  double factor = 0.0;            // prod_{i != j, j+1} (z_{j+1} - z_i) / (z_j - z_i)
  LagrangePolynomial perturbed;   // f'
};

FirstStep first_step(const ReferenceSet& reference, const ProblemInstance& instance, std::size_t j, double epsilon) {
  const std::size_t count = reference.indices.size();
  if (count != reference.degree + 2)
    throw PreconditionError("reference set has " + std::to_string(count) + " points, expected t + 2 = " +
                            std::to_string(reference.degree + 2));
  if (j + 1 >= count) throw PreconditionError("position j + 1 is outside the reference set");
  if (reference.signs[j] != reference.signs[j + 1] || reference.signs[j] == 0)
    throw PreconditionError("residuals at reference positions " + std::to_string(j) + " and " +
                            std::to_string(j + 1) + " lie on opposite sides; nothing to refute");
  if (!(epsilon >= 0.0) || epsilon > 0.1 * reference.discrepancy)
    throw PreconditionError("epsilon must lie in [0, 0.1 d]");

  std::vector<double> z(count);
  for (std::size_t i = 0; i < count; ++i) z[i] = coordinate(instance, reference.indices[i]);
  std::vector<double> f = reference_fitted_values(reference, instance);
  const int side = reference.signs[j];

  std::vector<double> nodes, values;
  double factor = 1.0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i == j || i == j + 1) continue;
    nodes.push_back(z[i]);
    values.push_back(f[i]);
    factor *= (z[j + 1] - z[i]) / (z[j] - z[i]);
  }
  nodes.push_back(z[j]);
  values.push_back(f[j] + side * epsilon);
  return FirstStep{std::move(z), std::move(f), side, factor, lagrange_interpolate(nodes, values)};
}

}  // namespace

bool strictly_alternating(std::span<const int> signs) {
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] == 0) return false;
    if (i > 0 && signs[i] == signs[i - 1]) return false;
  }
  return true;
}

ReferenceSet alternation_pattern(const FitResult& fit, const ProblemInstance& instance) {
  require_1d(instance);
  if (fit.exact_interpolation) throw DegenerateCase("fit interpolates the data exactly (discrepancy 0)");
  ReferenceSet ref;
  ref.indices = fit.active_points;
  std::stable_sort(ref.indices.begin(), ref.indices.end(),
                   [&](std::size_t a, std::size_t b) { return coordinate(instance, a) < coordinate(instance, b); });
  ref.signs.reserve(ref.indices.size());
  for (std::size_t i : ref.indices) ref.signs.push_back(sign_of(fit.residuals[i]));
  ref.discrepancy = fit.discrepancy;
  ref.degree = instance.m() > 0 ? instance.m() - 1 : 0;
  ref.equioscillates = ref.indices.size() >= ref.degree + 2 && strictly_alternating(ref.signs);
  return ref;
}

ProblemInstance one_sided_construction(const ProblemInstance& instance, const FitResult& fit, std::size_t j) {
  if (j >= instance.n()) throw PreconditionError("point index " + std::to_string(j) + " out of range");
  const double d = fit.discrepancy;
  if (fit.exact_interpolation || instance.weight(j) == 0.0 ||
      std::fabs(fit.residuals[j] + d) > active_tolerance(d))
    throw PreconditionError("point " + std::to_string(j) +
                            " is not an active overshoot (fitted value minus data must equal d)");
  ProblemInstance out = instance;
  if (out.row_scale.empty()) out.row_scale.assign(out.n(), 1.0);
  out.row_scale[j] = -out.row_scale[j];
  out.values[j] = -out.values[j];
  return out;
}

ProblemInstance one_sided_construction(const ProblemInstance& instance, std::size_t j) {
  return one_sided_construction(instance, fit(instance), j);
}

LagrangePolynomial::LagrangePolynomial(std::vector<double> nodes, std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)), weights_(nodes_.size(), 1.0) {
  for (std::size_t k = 0; k < nodes_.size(); ++k)
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (i != k) weights_[k] /= (nodes_[k] - nodes_[i]);
}

double LagrangePolynomial::operator()(double x) const {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (x == nodes_[k]) return values_[k];
    const double t = weights_[k] / (x - nodes_[k]);
    num += t * values_[k];
    den += t;
  }
  return num / den;
}

LagrangePolynomial lagrange_interpolate(std::span<const double> nodes, std::span<const double> values) {
  if (nodes.empty()) throw DimensionMismatch("interpolation needs at least one node");
  if (nodes.size() != values.size())
    throw DimensionMismatch(std::to_string(nodes.size()) + " nodes but " + std::to_string(values.size()) + " values");
  std::vector<double> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  const double span = sorted.back() - sorted.front();
  for (std::size_t k = 1; k < sorted.size(); ++k)
    if (sorted[k] - sorted[k - 1] <= 1e-12 * span || span == 0.0)
      throw DuplicateNodeError("interpolation nodes are not distinct (near " + std::to_string(sorted[k]) + ")");
  return LagrangePolynomial({nodes.begin(), nodes.end()}, {values.begin(), values.end()});
}

std::vector<double> reference_fitted_values(const ReferenceSet& reference, const ProblemInstance& instance) {
  require_1d(instance);
  if (instance.weighted() || !instance.row_scale.empty())
    throw PreconditionError("perturbation analysis applies to unweighted instances only");
  std::vector<double> f(reference.indices.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = instance.values[reference.indices[i]] - reference.signs[i] * reference.discrepancy;
  return f;
}

PerturbationStep perturbation_step(const ReferenceSet& reference, const ProblemInstance& instance, std::size_t j,
                                   double epsilon) {
  const FirstStep s = first_step(reference, instance, j, epsilon);
  PerturbationStep out;
  out.new_value_at_next = s.perturbed(s.z[j + 1]) - s.f[j + 1];
  out.product_formula_value = s.side * epsilon * s.factor;
  double scale = 0.0;
  for (double v : s.f) scale = std::max(scale, std::fabs(v));
  const double diff = std::fabs(out.new_value_at_next - out.product_formula_value);
  const double mag = std::max(std::fabs(out.new_value_at_next), std::fabs(out.product_formula_value));
  // Rounding floor: the direct route subtracts two O(|f|) numbers.
  out.agrees = diff <= 1e-8 * mag + 1e-13 * std::max(1.0, scale);
  out.moves_toward_data = out.product_formula_value * s.side >= 0.0;
  return out;
}

ReductionStep reduction_step(const ReferenceSet& reference, const ProblemInstance& instance, std::size_t j,
                             double epsilon, std::optional<double> delta) {
  const FirstStep s = first_step(reference, instance, j, epsilon);
  const std::size_t count = s.z.size();
  const double d = reference.discrepancy;

  std::vector<double> nodes;
  std::vector<std::size_t> node_pos;
  for (std::size_t i = 0; i < count; ++i)
    if (i != j + 1) {
      nodes.push_back(s.z[i]);
      node_pos.push_back(i);
    }

  ReductionStep out;
  if (delta) {
    out.delta = *delta;
  } else {
    // Largest residual of f off the reference set.
    std::vector<double> fnodes(s.z.begin(), s.z.begin() + static_cast<std::ptrdiff_t>(count - 1));
    std::vector<double> fvals(s.f.begin(), s.f.begin() + static_cast<std::ptrdiff_t>(count - 1));
    const LagrangePolynomial f = lagrange_interpolate(fnodes, fvals);
    double off = 0.0;
    bool any_off = false;
    for (std::size_t i = 0; i < instance.n(); ++i) {
      if (std::find(reference.indices.begin(), reference.indices.end(), i) != reference.indices.end()) continue;
      any_off = true;
      off = std::max(off, std::fabs(instance.values[i] - f(coordinate(instance, i))));
    }
    const double gap = any_off ? d - off : d;
    double spread = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k)
      if (node_pos[k] != j) spread += std::fabs(lagrange_basis(nodes, k, s.z[j + 1]));
    double limit = std::min(epsilon, gap);
    if (spread > 0.0) limit = std::min(limit, epsilon * std::fabs(s.factor) / spread);
    out.delta = std::max(0.0, limit) / 4.0;
  }

  std::vector<double> values(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const std::size_t i = node_pos[k];
    const double fp = s.perturbed(s.z[i]);
    const double q = instance.values[reference.indices[i]];
    values[k] = fp + out.delta * sign_of(q - fp);
  }
  const LagrangePolynomial second = lagrange_interpolate(nodes, values);
  out.discrepancies.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.discrepancies[i] = std::fabs(instance.values[reference.indices[i]] - second(s.z[i]));
    out.max_reference_discrepancy = std::max(out.max_reference_discrepancy, out.discrepancies[i]);
  }
  out.reduced = out.max_reference_discrepancy < d;
  return out;
}

}  // namespace minimax
