#include <cmath>
#include <sstream>

#include "doctest.h"
#include "gammatime/errors.hpp"
#include "gammatime/integrand.hpp"
#include "gammatime/jumpcalc.hpp"

using namespace gammatime;

namespace {
JumpPath two_jumps() { return JumpPath({0.5, 1.0}, {1.0, 2.0}); }
}  // namespace

TEST_CASE("amass is right-continuous") {
  const JumpPath p = two_jumps();
  CHECK(p.amass(0.75) == 1.0);
  CHECK(p.amass(1.0) == 3.0);
  CHECK(p.amass(0.4999) == 0.0);
  CHECK(p.left_limit(1.0) == 1.0);
  CHECK(p.jump_at(1.0) == 2.0);
  CHECK(p.jump_at(0.7) == 0.0);
  CHECK(p.total() == 3.0);
}

TEST_CASE("construction") {
  CHECK_THROWS_AS(JumpPath({1.0, 0.5}, {1.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(JumpPath({0.5}, {1.0, 1.0}), PreconditionError);
  const JumpPath m = JumpPath::from_unsorted({1.0, 0.5, 1.0}, {1.0, 2.0, 3.0});
  REQUIRE(m.size() == 2);
  CHECK(m.heights()[1] == 4.0);
}

TEST_CASE("integrate, compound, variation") {
  const JumpPath p = two_jumps();
  CHECK(integrate(p, [](double t) { return t; }) == doctest::Approx(2.5));
  CHECK(integrate(p, Integrand::indicator(0.0, 0.75)) == 1.0);
  CHECK_THROWS_AS(integrate(p, [](double t) { return 1.0 / (t - 0.5); }), DomainError);
  const double k[] = {-1.0, 0.5};
  CHECK(compound(p, k).total() == 0.0);
  const JumpPath sq = variation(p, [](double h) { return h * h; });
  CHECK(sq.total() == 5.0);
  CHECK_THROWS_AS(variation(p, [](double h) { return std::cos(h); }), PreconditionError);
}

TEST_CASE("partition sums refine to the quadratic variation") {
  const JumpPath p({0.1, 0.35, 0.8}, {0.4, 1.1, 0.3});
  auto phi = [](double h) { return h * h; };
  std::vector<double> grid;
  for (int m = 1; m <= 1024; m *= 2) {
    grid.clear();
    for (int i = 0; i <= m; ++i) grid.push_back(static_cast<double>(i) / m);
    if (m >= 8) CHECK(partition_sum(p, grid, phi) == doctest::Approx(0.16 + 1.21 + 0.09));
  }
  grid = {0.0, 1.0};
  CHECK(partition_sum(p, grid, phi) == doctest::Approx(1.8 * 1.8));
}

TEST_CASE("smooth composition telescopes") {
  const JumpPath p({0.2, 0.6, 0.9}, {0.5, 0.25, 1.0});
  auto phi = [](double x) { return std::exp(x) - 1.0; };
  const JumpPath y = compose_smooth(p, phi);
  for (double t : {0.1, 0.3, 0.7, 1.0}) CHECK(y.amass(t) == doctest::Approx(phi(p.amass(t))));
  const Modulated m = modulate(p, [](double t) { return 1.0 + t; });
  CHECK(m.evaluator(0.7) == doctest::Approx(1.7 * 0.75));
  CHECK(m.bracket.heights()[0] == doctest::Approx(1.44 * 0.25));
}

TEST_CASE("rcll inverse") {
  const JumpPath p({0.5, 1.0}, {1.0, 2.0});
  const InverseFn inv = rcll_inverse(p);
  CHECK(inv(-0.1).value() == 0.0);
  CHECK(inv(0.0).value() == 0.5);
  CHECK(inv(0.5).value() == 0.5);
  CHECK(inv(1.0).value() == 1.0);
  CHECK(inv(2.9).value() == 1.0);
  CHECK(inv(3.0).is_pos_inf());
  CHECK(inv.max_jump() == 0.5);
  // inverting twice gives the path back below its last jump time
  const InverseFn back = rcll_inverse(inv.as_path());
  for (double v : {0.0, 0.4, 0.5, 0.9}) CHECK(back(v).value() == p.amass(v));
  CHECK_THROWS_AS(rcll_inverse(JumpPath({0.5}, {-1.0})), PreconditionError);
}

TEST_CASE("csv round trip") {
  const JumpPath p({0.1, 0.30000000000000004, 2.0 / 3.0}, {1e-300, 0.1, 1.0 / 3.0});
  std::stringstream ss;
  write_path_csv(ss, p, {"seed=1"});
  const std::string text = ss.str();
  CHECK(text.rfind("# seed=1\nt,h\n", 0) == 0);
  const JumpPath q = read_path_csv(ss);
  CHECK(q.times() == p.times());
  CHECK(q.heights() == p.heights());
}
