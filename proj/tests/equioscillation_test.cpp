#include <cmath>

#include "doctest.h"
#include "minimax/equioscillation.hpp"
#include "minimax/error.hpp"
#include "minimax/selftest.hpp"
#include "test_util.hpp"

using namespace minimax;
using minimax::testing::line_instance;

namespace {

// z = (0, 1, 2), line basis, zero fit; positions 1 and 2 both sit above it.
ReferenceSet same_sided_reference() {
  ReferenceSet ref;
  ref.indices = {0, 1, 2};
  ref.signs = {-1, 1, 1};
  ref.discrepancy = 0.5;
  ref.degree = 1;
  return ref;
}

}  // namespace

TEST_CASE("alternation of small fits") {
  const auto hat = line_instance({0, 1, 2}, {0, 1, 0}, "1,x");
  const auto a = alternation_pattern(fit(hat), hat);
  CHECK(a.indices == std::vector<std::size_t>{0, 1, 2});
  CHECK(a.signs == std::vector<int>{-1, 1, -1});
  CHECK(a.degree == 1);
  CHECK(a.equioscillates);

  const auto sq = line_instance({0, 0.5, 1}, {0, 0.25, 1}, "1,x");
  const auto b = alternation_pattern(fit(sq), sq);
  CHECK(b.signs == std::vector<int>{1, -1, 1});
  CHECK(b.discrepancy == doctest::Approx(0.125));
  CHECK(b.equioscillates);

  // Order follows x, not input order.
  const auto shuffled = line_instance({2, 0, 1}, {0, 0, 1}, "1,x");
  CHECK(alternation_pattern(fit(shuffled), shuffled).indices == std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("alternation needs 1-D, non-degenerate data") {
  ProblemInstance plane;
  plane.points = {{{0, 0}}, {{1, 0}}, {{0, 1}}, {{1, 1}}};
  plane.values = {0, 1, 1, 0};
  plane.basis = parse_basis_spec("1,x,y", 2);
  CHECK_THROWS_AS(alternation_pattern(fit(plane), plane), DimensionError);
  const auto exact = line_instance({0, 1}, {0, 1}, "1,x");
  CHECK_THROWS_AS(alternation_pattern(fit(exact), exact), DegenerateCase);
}

TEST_CASE("strict alternation") {
  CHECK(strictly_alternating(std::vector<int>{1, -1, 1}));
  CHECK(strictly_alternating(std::vector<int>{-1}));
  CHECK_FALSE(strictly_alternating(std::vector<int>{1, 1, -1}));
}

TEST_CASE("random polynomial fits equioscillate") {
  Rng rng(4);
  for (int k = 0; k < 30; ++k) {
    const std::size_t t = 1 + k % 3;
    const auto inst = random_smooth_instance(rng, 30, t, 0.2);
    const auto ref = alternation_pattern(fit(inst), inst);
    CHECK(ref.indices.size() >= t + 2);
    CHECK(ref.equioscillates);
  }
}

TEST_CASE("one-sided construction keeps the optimum") {
  const auto hat = line_instance({0, 1, 2}, {0, 1, 0}, "1,x");
  const auto base = fit(hat);
  const auto flipped = one_sided_construction(hat, base, 0);
  CHECK(flipped.row_scale == std::vector<double>{-1, 1, 1});
  CHECK(flipped.values[0] == 0.0);
  const auto r = fit(flipped);
  CHECK(r.discrepancy == doctest::Approx(0.5));
  CHECK(r.coefficients[0] == doctest::Approx(0.5));
  CHECK(std::fabs(r.coefficients[1]) <= 1e-12);
  CHECK(r.residuals[0] == doctest::Approx(0.5));

  // Point 0 now sits on the undershoot side, so a second flip is refused.
  CHECK_THROWS_AS(one_sided_construction(flipped, r, 0), PreconditionError);
  // The middle point is an undershoot from the start.
  CHECK_THROWS_AS(one_sided_construction(hat, base, 1), PreconditionError);
  CHECK_THROWS_AS(one_sided_construction(hat, base, 7), PreconditionError);

  // Flipping both overshoots leaves every residual on one side.
  const auto both = one_sided_construction(flipped, r, 2);
  const auto rb = fit(both);
  CHECK(rb.discrepancy == doctest::Approx(0.5));
  const auto pattern = alternation_pattern(rb, both);
  CHECK(pattern.signs == std::vector<int>{1, 1, 1});
  CHECK_FALSE(pattern.equioscillates);

  const auto sq = line_instance({0, 0.5, 1}, {0, 0.25, 1}, "1,x");
  const auto rs = fit(one_sided_construction(sq, 1));
  CHECK(rs.discrepancy == doctest::Approx(0.125));
  CHECK(rs.coefficients[0] == doctest::Approx(-0.125));
  CHECK(rs.coefficients[1] == doctest::Approx(1.0));
}

TEST_CASE("Lagrange interpolation") {
  const std::vector<double> n2{0, 1}, v2{0, 1};
  CHECK(lagrange_interpolate(n2, v2)(0.5) == doctest::Approx(0.5));

  const std::vector<double> n3{0, 1, 2}, v3{0, 1, 0};
  const auto p = lagrange_interpolate(n3, v3);
  CHECK(p(3.0) == doctest::Approx(-3.0));
  CHECK(p(1.0) == 1.0);
  CHECK(p.degree() == 2);

  const std::vector<double> n1{5}, v1{7};
  CHECK(lagrange_interpolate(n1, v1)(-2.0) == 7.0);

  const std::vector<double> dup{0, 1, 1};
  CHECK_THROWS_AS(lagrange_interpolate(dup, v3), DuplicateNodeError);
  CHECK_THROWS_AS(lagrange_interpolate(n3, v2), DimensionMismatch);
  CHECK_THROWS_AS(lagrange_interpolate(std::vector<double>{}, std::vector<double>{}), DimensionMismatch);
}

TEST_CASE("perturbation step on three nodes") {
  const auto inst = line_instance({0, 1, 2}, {-0.5, 0.5, 0.5}, "1,x");
  const auto ref = same_sided_reference();
  const auto f = reference_fitted_values(ref, inst);
  for (double v : f) CHECK(std::fabs(v) <= 1e-15);

  const auto step = perturbation_step(ref, inst, 1, 0.01);
  CHECK(step.product_formula_value == doctest::Approx(0.02));
  CHECK(step.new_value_at_next == doctest::Approx(0.02));
  CHECK(step.agrees);
  CHECK(step.moves_toward_data);

  CHECK_THROWS_AS(perturbation_step(ref, inst, 0, 0.01), PreconditionError);
  CHECK_THROWS_AS(perturbation_step(ref, inst, 1, 0.2), PreconditionError);

  const auto red = reduction_step(ref, inst, 1, 0.01);
  CHECK(red.delta > 0.0);
  CHECK(red.reduced);
  CHECK(red.max_reference_discrepancy < 0.5);
}

TEST_CASE("random perturbation cases") {
  Rng rng(13);
  for (int k = 0; k < 40; ++k) {
    const auto c = random_perturbation_case(rng, 1 + k % 4);
    const auto step = perturbation_step(c.reference, c.instance, c.j, c.epsilon);
    CHECK(step.agrees);
    CHECK(step.moves_toward_data);
    CHECK(reduction_step(c.reference, c.instance, c.j, c.epsilon).reduced);
  }
}
