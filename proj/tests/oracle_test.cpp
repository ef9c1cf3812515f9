#include <cmath>

#include "doctest.h"
#include "minimax/error.hpp"
#include "minimax/oracle.hpp"
#include "minimax/selftest.hpp"
#include "test_util.hpp"

using namespace minimax;
using minimax::testing::line_instance;

TEST_CASE("oracle on the hat data") {
  const auto inst = line_instance({0, 1, 2}, {0, 1, 0}, "1,x");
  const auto o = brute_force_fit(inst);
  CHECK(o.discrepancy == doctest::Approx(0.5));
  CHECK(o.coefficients[0] == doctest::Approx(0.5));
  CHECK(std::fabs(o.coefficients[1]) <= 1e-12);
  CHECK(o.witness_subset == std::vector<std::size_t>{0, 1, 2});
  CHECK(o.witness_signs == std::vector<int>{-1, 1, -1});

  const auto cmp = compare_with_oracle(fit(inst), o, inst);
  CHECK(cmp.agrees);
  CHECK(cmp.coefficients_agree);
}

TEST_CASE("oracle handles weights") {
  auto inst = line_instance({0.0, 1.0}, {0.0, 1.0}, "1");
  inst.weights = std::vector<double>{2.0, 1.0};
  const auto o = brute_force_fit(inst);
  CHECK(o.coefficients[0] == doctest::Approx(1.0 / 3.0));
  CHECK(o.discrepancy == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("oracle and LP agree on small random instances") {
  Rng rng(99);
  for (int k = 0; k < 100; ++k) {
    const auto inst = random_small_instance(rng, 10, 3);
    const auto cmp = compare_with_oracle(fit(inst), brute_force_fit(inst), inst);
    CHECK(cmp.agrees);
    CHECK(cmp.discrepancy_difference <= kOracleDiscrepancyTol);
  }
}

TEST_CASE("rank-deficient designs have no witness system") {
  const auto inst = line_instance({1, 1, 1}, {0, 1, 2}, "1,x");
  CHECK_THROWS_AS(brute_force_fit(inst), NoCandidate);
}

TEST_CASE("oracle limits") {
  std::vector<double> xs(16), ys(16);
  for (int i = 0; i < 16; ++i) xs[i] = i;
  CHECK_THROWS_AS(brute_force_fit(line_instance(xs, ys, "1")), TooLarge);
  CHECK_THROWS_AS(brute_force_fit(line_instance({0, 1, 2, 3, 4, 5}, {0, 1, 0, 1, 0, 1}, "1,x,x^2,x^3,x^4")),
                  TooLarge);
}

TEST_CASE("dense solve") {
  Matrix a(2, 2);
  a(0, 0) = 2; a(0, 1) = 1;
  a(1, 0) = 1; a(1, 1) = 3;
  const auto x = solve_dense(a, {3, 5});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == doctest::Approx(0.8));
  CHECK((*x)[1] == doctest::Approx(1.4));
  a(1, 0) = 4; a(1, 1) = 2;
  CHECK_FALSE(solve_dense(a, {1, 2}).has_value());
}
