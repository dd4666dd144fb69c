#include <cmath>

#include "doctest.h"
#include "gammatime/errors.hpp"
#include "gammatime/integrand.hpp"
#include "gammatime/modular.hpp"

using namespace gammatime;

constexpr double kPhi1NormUnit = 0.80646599423632681;  // root of ln(1 + 1/c) = c
constexpr double kPhi2NormUnit = 0.62960840031913346;  // root of ln(1 + 1/c^2) / 2 = c
// int_0^inf (1 - e^{-x^2 theta^2}) e^{-x} / x dx, 30-digit quadrature
constexpr double kQv[] = {0.16548209316780141, 0.40505659567722835, 0.79323596126686660, 1.3046959101947954,
                          1.8978451452003657};

TEST_CASE("modular values") {
  CHECK(modular_value(ModularKind::phi1(), Integrand::constant(std::exp(1.0) - 1.0, 0.0, 1.0)).value() ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(modular_value(ModularKind::phi2(), Integrand::indicator(0.0, 1.0)).value() ==
        doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
  for (const char* name : {"phi0_min", "phi0_ratio", "phi0_exp", "phi0_arctan", "phi1", "phi2", "phi1_squared"}) {
    CHECK(modular_value(ModularKind::parse(name), Integrand::zero()).value() == 0.0);
  }
  CHECK(modular_value(ModularKind::phi1(), Integrand::power(1.0, -1.0, 0.0, INFINITY)).is_pos_inf());
  // int_0^inf ln(1 + x^{-2}) dx = pi
  CHECK(modular_value(ModularKind::phi1(), Integrand::power(1.0, -2.0, 0.0, INFINITY)).value() ==
        doctest::Approx(M_PI).epsilon(1e-9));
  CHECK_THROWS_AS(ModularKind::parse("phi9"), PreconditionError);
}

TEST_CASE("F-norms") {
  CHECK(f_norm(ModularKind::phi1(), Integrand::zero()).value() == 0.0);
  CHECK(f_norm(ModularKind::phi1(), Integrand::indicator(0.0, 1.0)).value() ==
        doctest::Approx(kPhi1NormUnit).epsilon(1e-12));
  CHECK(f_norm(ModularKind::phi2(), Integrand::indicator(0.0, 1.0)).value() ==
        doctest::Approx(kPhi2NormUnit).epsilon(1e-12));
  // phi0_min modular is bounded by the support measure, so the norm of a
  // huge indicator is still finite; an infinite modular at every scale is not
  CHECK(f_norm(ModularKind::phi1(), Integrand::power(1.0, -1.0, 0.0, INFINITY)).is_pos_inf());
  const Integrand f = Integrand::constant(3.0, 0.0, 2.0);
  const Integrand g = Integrand::piecewise({0.0, 0.5, 4.0}, {-1.0, 2.5});
  const double nf = f_norm(ModularKind::phi1(), f).value();
  const double ng = f_norm(ModularKind::phi1(), g).value();
  CHECK(f_norm(ModularKind::phi1(), f + g).value() <= nf + ng);
  CHECK(f_norm(ModularKind::phi1(), f.scaled(-1.0)).value() == doctest::Approx(nf).epsilon(1e-13));
}

TEST_CASE("equivalence witnesses") {
  const auto grid = default_modular_grid();
  CHECK(equivalence_witness(ModularKind::phi0_exp(), ModularKind::phi0_min(), 1.0, 1.0, grid));
  CHECK(equivalence_witness(ModularKind::phi0_min(), ModularKind::phi0_exp(), 0.5, 1.0, grid));
  CHECK(equivalence_witness(ModularKind::phi0_arctan(), ModularKind::phi0_min(), 2.0 / M_PI, 1.0, grid));
  CHECK_FALSE(equivalence_witness(ModularKind::phi0_min(), ModularKind::phi0_exp(), 1.0, 1.0, grid));
  const auto ab = find_equivalence_constants(ModularKind::phi0_min(), ModularKind::phi0_ratio(), grid);
  REQUIRE(ab.has_value());
  CHECK(equivalence_witness(ModularKind::phi0_min(), ModularKind::phi0_ratio(), ab->first, ab->second, grid));
  // a grid is finite, so small enough constants always exist here; only the unit pair fails
  CHECK_FALSE(equivalence_witness(ModularKind::phi1(), ModularKind::phi0_min(), 1.0, 1.0, grid));
  CHECK(find_equivalence_constants(ModularKind::phi1(), ModularKind::phi0_min(), grid).has_value());
}

TEST_CASE("custom modular functions are spot-checked") {
  CHECK_NOTHROW(ModularKind::custom([](double u) { return std::sqrt(u); }, "sqrt"));
  CHECK_THROWS_AS(ModularKind::custom([](double u) { return 1.0 + u; }), PreconditionError);
  // monotone phi already satisfies phi(a u + (1-a) v) <= phi(u) + phi(v)
  CHECK_NOTHROW(ModularKind::custom([](double u) { return u * u; }));
  CHECK_THROWS_AS(ModularKind::custom([](double u) { return u / (1.0 + u * u); }), PreconditionError);
}

TEST_CASE("integrability classifiers") {
  CHECK(gamma_integrable(Integrand::power_alpha(1.0, 0.5, 0.0, INFINITY), 1.0) == Integrability::integrable);
  CHECK(gamma_integrable(Integrand::power_alpha(1.0, 1.0, 0.0, INFINITY), 1.0) == Integrability::not_integrable);
  CHECK(gamma_integrable(Integrand::indicator(0.0, 5.0), 0.3) == Integrability::integrable);
  // x^{-1} at infinity: ln(1+x^-2)/2 is integrable, ln(1+x^-1) is not
  CHECK(gamma_integrable(Integrand::power(1.0, -1.0, 1.0, INFINITY), 0.0) == Integrability::integrable);
  CHECK(gamma_integrable(Integrand::power(1.0, -1.0, 1.0, INFINITY), 0.5) == Integrability::not_integrable);
  CHECK(to_string(Integrability::boundary) == "boundary");

  CHECK(p_moment_exists(Integrand::indicator(0.0, 1.0), 7.0));
  CHECK(p_moment_exists(Integrand::power_alpha(1.0, 0.5, 0.0, 1.0), 0.4));
  CHECK_FALSE(p_moment_exists(Integrand::power_alpha(1.0, 0.5, 0.0, 1.0), 0.6));
  CHECK_FALSE(p_moment_exists(Integrand::power_alpha(1.0, 2.0, 0.0, INFINITY), 3.0));
}

TEST_CASE("quadratic variation kernel") {
  const double thetas[] = {0.5, 1.0, 2.0, 4.0, 8.0};
  for (int i = 0; i < 5; ++i) {
    CHECK(qv_kernel_gaussian(thetas[i]) == doctest::Approx(kQv[i]).epsilon(1e-10));
    CHECK(qv_kernel_direct(thetas[i]) == doctest::Approx(kQv[i]).epsilon(1e-10));
  }
  CHECK(qv_modular(Integrand::zero()).value() == 0.0);
  const Integrand f = Integrand::indicator(0.0, 1.0);
  CHECK(std::fabs(qv_modular(f).value() - qv_modular_direct(f).value()) <= 1e-8);
  CHECK(qv_modular(f).value() == doctest::Approx(kQv[1]).epsilon(1e-10));
}

TEST_CASE("cosine and sine functionals sit below their dominating bounds") {
  for (int i = 0; i <= 40; ++i) {
    const double u = std::pow(10.0, -4.0 + 0.2 * i);
    CHECK(cosine_functional(u) <= cosine_dominating_bound(u) * (1.0 + 1e-12));
    CHECK(sine_functional(u) <= sine_dominating_bound(u) * (1.0 + 1e-12));
  }
}
