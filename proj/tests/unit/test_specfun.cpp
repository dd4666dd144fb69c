#include <cmath>
#include <vector>

#include "doctest.h"
#include "gammatime/errors.hpp"
#include "gammatime/specfun.hpp"

using namespace gammatime;

// Reference values from a 30-digit evaluation of the defining integral.
constexpr double kE1At1 = 0.21938393439552027368;
constexpr double kE1At1em8 = 17.843465089050832587;
constexpr double kE1At2 = 0.048900510708061119567;
constexpr double kE1At20 = 9.8355252906498816904e-11;
constexpr double kH1 = 0.26473701045154315946;

TEST_CASE("e1 density") {
  CHECK(e1_density(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(e1_density(2.0) == doctest::Approx(0.0676676416183064).epsilon(1e-14));
  CHECK_THROWS_AS(e1_density(0.0), DomainError);
  CHECK_THROWS_AS(e1_density(-1.0), DomainError);
}

TEST_CASE("E1 against reference values") {
  CHECK(exp_integral_e1(1.0) == doctest::Approx(kE1At1).epsilon(1e-14));
  CHECK(exp_integral_e1(1e-8) == doctest::Approx(kE1At1em8).epsilon(1e-14));
  CHECK(exp_integral_e1(2.0) == doctest::Approx(kE1At2).epsilon(1e-13));
  CHECK(exp_integral_e1(20.0) == doctest::Approx(kE1At20).epsilon(1e-12));
  CHECK(exp_integral_e1(2.0) < exp_integral_e1(1.0));
  CHECK_THROWS_AS(exp_integral_e1(0.0), DomainError);
}

TEST_CASE("E1 is strictly decreasing across the series/continued-fraction switch") {
  double prev = exp_integral_e1(1e-8);
  for (int i = 1; i <= 400; ++i) {
    const double v = 1e-8 * std::pow(50.0 / 1e-8, i / 400.0);
    const double cur = exp_integral_e1(v);
    REQUIRE(cur < prev);
    prev = cur;
  }
  const double below = exp_integral_e1(std::nextafter(1.0, 0.0));
  const double at = exp_integral_e1(1.0);
  CHECK(std::fabs(below - at) < 1e-14);
}

TEST_CASE("H inverts E1") {
  CHECK(h_inverse(exp_integral_e1(0.5)) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(h_inverse(kE1At1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(h_inverse(1.0) == doctest::Approx(kH1).epsilon(1e-11));
  CHECK_THROWS_AS(h_inverse(0.0), DomainError);
  for (int i = 0; i < 100; ++i) {
    const double v = 1e-8 * std::pow(20.0 / 1e-8, i / 99.0);
    const double x = exp_integral_e1(v);
    CHECK(std::fabs(exp_integral_e1(h_inverse(x)) - x) <= 1e-10 * x);
  }
}

TEST_CASE("H is strictly decreasing and submultiplicative") {
  std::vector<double> grid;
  for (int i = 0; i < 30; ++i) grid.push_back(1e-4 * std::pow(2e5, i / 29.0));
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(h_inverse(grid[i]) < h_inverse(grid[i - 1]));
  for (double x : grid) {
    for (double y : grid) {
      CHECK(h_inverse(x + y) <= std::exp(-x) * h_inverse(y) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("H underflows to zero far out") {
  CHECK(h_inverse(800.0) == 0.0);
  CHECK(h_inverse(700.0) > 0.0);
}

TEST_CASE("bracketed solver") {
  BracketedEquation eq;
  eq.evaluator = [](double x) { return x; };
  eq.lo = -1.0;
  eq.hi = 1.0;
  CHECK(std::fabs(solve_bracketed(eq)) <= 1e-14);

  eq.evaluator = [](double c) { return std::log1p(1.0 / c) - c; };
  eq.lo = 1e-3;
  eq.hi = 2.0;
  CHECK(solve_bracketed(eq) == doctest::Approx(0.80646599423632681).epsilon(1e-12));

  eq.evaluator = [](double x) { return x * x + 1.0; };
  CHECK_THROWS_AS(solve_bracketed(eq), PreconditionError);

  eq.evaluator = [](double x) { return x; };
  eq.lo = 1.0;
  eq.hi = -1.0;
  CHECK_THROWS_AS(solve_bracketed(eq), PreconditionError);
}

TEST_CASE("shift constant of the symmetric martingale") {
  const double c = shifted_symmetric_constant();
  CHECK(c == doctest::Approx(-0.71455638474300968).epsilon(1e-12));
  CHECK(std::fabs(c - std::log1p(-c * c)) < 1e-13);
}
