#include <cmath>
#include <numbers>
#include <random>

#include "catch_amalgamated.hpp"

#include "timqd/errors.hpp"
#include "timqd/numerics.hpp"

using namespace timqd;
using namespace timqd::numerics;
using Catch::Matchers::WithinAbs;

TEST_CASE("Simpson integrates smooth functions to tolerance") {
  CHECK_THAT(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi), WithinAbs(2.0, 1e-10));
  CHECK_THAT(integrate([](double x) { return std::exp(x); }, 0.0, 1.0),
             WithinAbs(std::numbers::e - 1.0, 1e-10));
  CHECK_THAT(integrate([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0),
             WithinAbs(std::numbers::pi / 4.0, 1e-10));
}

TEST_CASE("Simpson is exact for cubics") {
  const double v = integrate([](double x) { return 4 * x * x * x - 3 * x * x + 2 * x - 1; }, -1.0, 2.0);
  // [x^4 - x^3 + x^2 - x] from -1 to 2 = 10 - 4
  CHECK_THAT(v, WithinAbs(6.0, 1e-12));
}

TEST_CASE("integration is linear in the integrand") {
  auto f = [](double x) { return std::cos(3 * x) + x; };
  auto g = [](double x) { return std::exp(-x * x); };
  const double If = integrate(f, 0.0, 2.0);
  const double Ig = integrate(g, 0.0, 2.0);
  for (double alpha : {-2.0, 0.5, 3.0}) {
    for (double beta : {-1.0, 0.25, 7.0}) {
      const double combined = integrate([&](double x) { return alpha * f(x) + beta * g(x); }, 0.0, 2.0);
      CHECK_THAT(combined, WithinAbs(alpha * If + beta * Ig, 1e-9));
    }
  }
}

TEST_CASE("batch integration matches per-component integration") {
  auto batch = [](std::span<const double> nodes, std::span<double> sums) {
    for (double x : nodes) {
      sums[0] += std::sin(x);
      sums[1] += x * x;
      sums[2] += std::sqrt(1.0 + x);
    }
  };
  const auto r = integrate_batch(batch, 3, 0.0, 1.0);
  REQUIRE(r.size() == 3);
  CHECK_THAT(r[0], WithinAbs(1.0 - std::cos(1.0), 1e-10));
  CHECK_THAT(r[1], WithinAbs(1.0 / 3.0, 1e-10));
  CHECK_THAT(r[2], WithinAbs(2.0 / 3.0 * (std::pow(2.0, 1.5) - 1.0), 1e-10));
}

TEST_CASE("non-convergence reports the last estimate") {
  QuadratureSpec spec;
  spec.abs_tol = 1e-14;
  spec.max_refinements = 6;
  try {
    integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, spec);
    FAIL("expected NonConvergenceError");
  } catch (const NonConvergenceError& e) {
    CHECK_THAT(e.estimate(), WithinAbs(2.0 / 3.0, 1e-2));
    CHECK(e.error_bound() > spec.abs_tol);
  }
}

TEST_CASE("quadrature arguments are validated") {
  auto f = [](double x) { return x; };
  CHECK_THROWS_AS(integrate(f, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(integrate(f, 0.0, 1.0, QuadratureSpec{0.0, 10}), std::invalid_argument);
  CHECK_THROWS_AS(integrate(f, 0.0, 1.0, QuadratureSpec{1e-8, -1}), std::invalid_argument);
  CHECK_THROWS_AS(integrate([](double) { return NAN; }, 0.0, 1.0), NonConvergenceError);
}

TEST_CASE("determinant of small matrices") {
  SquareMatrix m(3);
  const double v[3][3] = {{2, -1, 0}, {1, 3, 4}, {0, 5, -2}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = v[i][j];
  CHECK_THAT(determinant(m), WithinAbs(-54.0, 1e-12));
  CHECK(determinant(SquareMatrix::identity(5)) == 1.0);

  SquareMatrix singular(2);
  singular(0, 0) = 1;
  singular(0, 1) = 2;
  singular(1, 0) = 2;
  singular(1, 1) = 4;
  CHECK(determinant(singular) == 0.0);

  SquareMatrix swap(2);
  swap(0, 1) = 1;
  swap(1, 0) = 1;
  CHECK(determinant(swap) == -1.0);
}

TEST_CASE("determinant is multiplicative") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {1u, 2u, 4u, 7u}) {
    for (int trial = 0; trial < 20; ++trial) {
      SquareMatrix a(n), b(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          a(i, j) = u(rng);
          b(i, j) = u(rng);
        }
      const double lhs = determinant(a * b);
      const double rhs = determinant(a) * determinant(b);
      CHECK_THAT(lhs, WithinAbs(rhs, 1e-12 * std::max(1.0, std::abs(rhs))));
    }
  }
}

TEST_CASE("bisection finds bracketed roots") {
  const double r = find_root([](double x) { return std::cos(x); }, {0.0, 2.0, 1e-12});
  CHECK_THAT(r, WithinAbs(std::numbers::pi / 2, 1e-11));
  CHECK(find_root([](double x) { return x - 1.0; }, {1.0, 2.0, 1e-8}) == 1.0);
}

TEST_CASE("bisection rejects brackets without a sign change") {
  try {
    find_root([](double x) { return x * x + 1.0; }, {-1.0, 1.0, 1e-8});
    FAIL("expected InvalidBracketError");
  } catch (const InvalidBracketError& e) {
    CHECK(e.f_lo() == 2.0);
    CHECK(e.f_hi() == 2.0);
  }
  CHECK_THROWS_AS(find_root([](double x) { return x; }, {1.0, -1.0, 1e-8}), std::invalid_argument);
  CHECK_THROWS_AS(find_root([](double x) { return x; }, {-1.0, 1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("pre-scan returns the first sign change") {
  auto f = [](double x) { return std::sin(10.0 * x); };  // roots at k pi / 10
  const auto br = first_sign_change(f, 0.1, 1.0, 1e-3, 1e-10);
  REQUIRE(br);
  CHECK(br->lo <= std::numbers::pi / 10);
  CHECK(br->hi >= std::numbers::pi / 10);
  CHECK(br->hi - br->lo <= 1e-3 + 1e-15);
  CHECK_THAT(find_root(f, *br), WithinAbs(std::numbers::pi / 10, 1e-9));

  CHECK_FALSE(first_sign_change([](double x) { return 1.0 + x; }, 0.0, 1.0, 0.1, 1e-8));
  // Root exactly on a grid node.
  const auto on_node = first_sign_change([](double x) { return x - 0.5; }, 0.0, 1.0, 0.25, 1e-8);
  REQUIRE(on_node);
  CHECK(on_node->lo <= 0.5);
  CHECK(on_node->hi >= 0.5);
  // Last cell shorter than the step still ends at hi.
  const auto tail = first_sign_change([](double x) { return x - 0.95; }, 0.0, 0.97, 0.1, 1e-8);
  REQUIRE(tail);
  CHECK(tail->hi == 0.97);
}

TEST_CASE("central difference is second-order accurate") {
  auto f = [](double x) { return std::sin(x); };
  const double e1 = std::abs(central_difference(f, 0.3, 1e-2) - std::cos(0.3));
  const double e2 = std::abs(central_difference(f, 0.3, 5e-3) - std::cos(0.3));
  CHECK(e1 < 2e-5);
  CHECK_THAT(e1 / e2, WithinAbs(4.0, 0.05));
  CHECK_THROWS_AS(central_difference(f, 0.3, 0.0), std::invalid_argument);
}
