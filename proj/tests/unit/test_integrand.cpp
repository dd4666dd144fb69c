#include <cmath>

#include "doctest.h"
#include "gammatime/errors.hpp"
#include "gammatime/integrand.hpp"

using namespace gammatime;

TEST_CASE("piecewise evaluation is left-open except at the first breakpoint") {
  const Integrand f = Integrand::parse("pc:0,0.5,1;v=2,1");
  CHECK(f(0.0) == 2.0);
  CHECK(f(0.25) == 2.0);
  CHECK(f(0.5) == 2.0);
  CHECK(f(0.75) == 1.0);
  CHECK(f(1.0) == 1.0);
  CHECK(f(1.5) == 0.0);
  CHECK(f.support_measure().value() == 1.0);
  CHECK(f.power_integral(1).value() == doctest::Approx(1.5));
  CHECK(f.abs_power_integral(2.0).value() == doctest::Approx(2.5));
  CHECK(f.is_nonnegative());
  CHECK(f.is_bounded());
}

TEST_CASE("spec round trip") {
  for (const char* s : {"pc:0,0.5,1;v=2,1", "pow:c=1,alpha=0.5,a=0,b=1", "pow:c=2,k=1,a=0,b=inf", "zero",
                        "pc:0,2,inf;v=-1,0.25"}) {
    const Integrand f = Integrand::parse(s);
    const Integrand g = Integrand::parse(f.spec());
    CHECK(g.spec() == f.spec());
  }
  CHECK(Integrand::parse("pow:c=1,alpha=0.5,a=0,b=1").as_power().exponent == -2.0);
}

TEST_CASE("bad specs") {
  CHECK_THROWS_AS(Integrand::parse("pc:0,1;v=1,2"), PreconditionError);
  CHECK_THROWS_AS(Integrand::parse("pc:1,0;v=1"), PreconditionError);
  CHECK_THROWS_AS(Integrand::parse("pow:c=1,a=0,b=1"), PreconditionError);
  CHECK_THROWS_AS(Integrand::parse("pow:c=1,alpha=1,k=1"), PreconditionError);
  CHECK_THROWS_AS(Integrand::parse("pow:c=1,alpha=-1"), PreconditionError);
  CHECK_THROWS_AS(Integrand::parse("sin:1"), PreconditionError);
}

TEST_CASE("power integrals") {
  const Integrand f = Integrand::power(1.0, 1.0, 0.0, 1.0);
  CHECK(f.power_integral(1).value() == doctest::Approx(0.5));
  CHECK(f.power_integral(2).value() == doctest::Approx(1.0 / 3.0));
  CHECK(f.power_integral(3).value() == doctest::Approx(0.25));

  const Integrand stable = Integrand::power_alpha(1.0, 0.5, 0.0, 1.0);  // x^{-2}
  CHECK(stable.abs_power_integral(1.0).is_pos_inf());
  CHECK(stable.abs_power_integral(0.25).value() == doctest::Approx(2.0));
  // |f| <= 1 only at x = 1, |f| > 1 on (0, 1)
  CHECK(stable.level_power_integral(1.0, 1.0, false).value() == doctest::Approx(0.0));

  const Integrand inv = Integrand::power(1.0, -1.0, 1.0, INFINITY);
  CHECK(inv.power_integral(1).is_pos_inf());
  CHECK(inv.power_integral(2).value() == doctest::Approx(1.0));
  CHECK(inv.support_measure().is_pos_inf());

  const Integrand neg = Integrand::power(-1.0, 1.0, 0.0, 2.0);
  CHECK(neg.power_integral(1).value() == doctest::Approx(-2.0));
  CHECK(neg.power_integral(2).value() == doctest::Approx(8.0 / 3.0));
}

TEST_CASE("sums and scaling") {
  const Integrand f = Integrand::constant(1.0, 0.0, 1.0);
  const Integrand g = Integrand::constant(2.0, 0.5, 2.0);
  const Integrand h = f + g;
  CHECK(h(0.25) == 1.0);
  CHECK(h(0.75) == 3.0);
  CHECK(h(1.5) == 2.0);
  CHECK(h.power_integral(1).value() == doctest::Approx(4.0));
  CHECK(f.scaled(3.0)(0.5) == 3.0);
  CHECK(Integrand::zero().is_zero());
}
