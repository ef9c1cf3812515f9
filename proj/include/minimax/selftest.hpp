#pragma once

// Seeded random instance generators and the property battery behind
// `minimax selftest`. The acceptance tests reuse the generators.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "minimax/equioscillation.hpp"
#include "minimax/fit.hpp"

namespace minimax {

using Rng = std::mt19937_64;

/// "1, x, x^2, ..., x^degree" in one variable.
std::string monomial_spec(std::size_t degree);

/// n distinct sorted points in [-1, 1], values sin(3x) + 0.5 exp(x) + noise.
ProblemInstance random_smooth_instance(Rng& rng, std::size_t n, std::size_t degree, double noise = 0.05);

/// Small instance for oracle comparison: n in [m+2, max_n], m in [1, max_m],
/// uniform values. Every fourth draw is 2-D with basis (1, x, y) when max_m >= 3.
ProblemInstance random_small_instance(Rng& rng, std::size_t max_n, std::size_t max_m);

/// Weights uniform in [lo, hi].
std::vector<double> random_weights(Rng& rng, std::size_t n, double lo, double hi);

/// Same fit problem with the weights folded into the rows: row_scale = w, values = w * y.
ProblemInstance prescaled(const ProblemInstance& weighted);

/// Synthetic reference configuration for the perturbation argument: t + 2 sorted
/// abscissae, data y_i = poly(z_i) + s_i d with the signs alternating except that
/// positions j and j+1 share a side.
struct PerturbationCase {
  ProblemInstance instance;
  ReferenceSet reference;
  std::size_t j = 0;
  double epsilon = 0.0;
};
PerturbationCase random_perturbation_case(Rng& rng, std::size_t degree);

nlohmann::json instance_to_json(const ProblemInstance& instance);
ProblemInstance instance_from_json(const nlohmann::json& j);

struct PropertyOutcome {
  explicit PropertyOutcome(std::string name_) : name(std::move(name_)) {}

  std::string name;
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::optional<nlohmann::json> first_failure;  // instance for replay
  std::string failure_detail;

  bool ok() const noexcept { return checked == passed; }
};

std::vector<PropertyOutcome> run_property_battery(std::uint64_t seed, std::size_t instances);

}  // namespace minimax
