#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "gammatime/analytic.hpp"
#include "gammatime/errors.hpp"
#include "gammatime/integrand.hpp"

using namespace gammatime;

// P(Gamma_x <= t), 30-digit regularized incomplete gamma
struct CdfCase {
  double x, t, value;
};
constexpr CdfCase kCdf[] = {
    {0.5, 0.1, 0.34527915398142298}, {1.0, 0.1, 0.095162581964040432}, {2.0, 0.1, 0.0046788401604444700},
    {0.5, 0.5, 0.68268949213708590}, {1.0, 0.5, 0.39346934028736658},  {2.0, 0.5, 0.090204010431049865},
};

TEST_CASE("Laplace transform") {
  for (double th : {0.0, 0.5, 1.0, 2.0}) {
    CHECK(laplace_gamma(Integrand::indicator(0.0, 2.0), th) == doctest::Approx(std::pow(1.0 + th, -2.0)).epsilon(1e-14));
  }
  // exp(-int_0^inf ln(1 + x^-2) dx) = e^{-pi}; on (0, 1] the exponent is ln 2 + pi/2
  CHECK(laplace_gamma(Integrand::power_alpha(1.0, 0.5, 0.0, INFINITY), 1.0) == doctest::Approx(std::exp(-M_PI)).epsilon(1e-9));
  CHECK(laplace_gamma(Integrand::power_alpha(1.0, 0.5, 0.0, 1.0), 1.0) == doctest::Approx(0.10393978817538095).epsilon(1e-9));
  CHECK_THROWS_AS(laplace_gamma(Integrand::power(1.0, -1.0, 1.0, INFINITY), 1.0), DomainError);
  // independent increments
  const Integrand f = Integrand::constant(2.0, 0.0, 1.0);
  const Integrand g = Integrand::constant(0.5, 1.0, 3.0);
  CHECK(laplace_gamma(f + g, 0.7) == doctest::Approx(laplace_gamma(f, 0.7) * laplace_gamma(g, 0.7)).epsilon(1e-14));
}

TEST_CASE("characteristic function") {
  const Integrand f = Integrand::indicator(0.0, 1.0);
  const auto z0 = fourier_gamma(f, 1.0, 0.0);
  CHECK(z0.real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(std::fabs(z0.imag()) < 1e-15);
  const auto z1 = fourier_gamma(f, 1.0, 1.0);
  CHECK(z1.real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(z1.imag() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(fourier_gamma(f, 0.0, 0.4) == std::complex<double>(1.0, 0.0));
  // beta = 1 is the Gamma law itself: (1 - i theta)^{-1}
  const auto g = 1.0 / std::complex<double>(1.0, -2.0);
  const auto z2 = fourier_gamma(f, 2.0, 1.0);
  CHECK(z2.real() == doctest::Approx(g.real()).epsilon(1e-13));
  CHECK(z2.imag() == doctest::Approx(g.imag()).epsilon(1e-13));
  const Integrand h = Integrand::piecewise({0.0, 1.0, 2.5}, {-1.5, 0.75});
  for (double th : {0.1, 1.0, 7.0}) {
    const auto a = fourier_gamma(h, th, 0.3);
    const auto b = fourier_gamma(h, -th, 0.3);
    CHECK(std::abs(a) <= 1.0);
    CHECK(std::abs(a - std::conj(b)) < 1e-14);
  }
}

TEST_CASE("Bell polynomials and moments") {
  const std::vector<double> x = {2.0, 3.0, 5.0, 7.0};
  CHECK(bell_partial(4, 2, x) == doctest::Approx(4 * 2.0 * 5.0 + 3 * 3.0 * 3.0));
  CHECK(bell_partial(3, 3, x) == doctest::Approx(8.0));
  CHECK(bell_partial(4, 1, x) == doctest::Approx(7.0));

  std::vector<double> ones(20, 1.0);
  double fact = 1.0;
  for (int p = 1; p <= 10; ++p) {
    fact *= p;
    CHECK(moments_from_levy(ones, p) == fact);
  }
  const std::vector<double> m = {0.5, 1.0 / 3.0, 0.25};
  CHECK(moments_from_levy(m, 2) == doctest::Approx(7.0 / 12.0));
  CHECK(moments_from_levy(m, 3) == doctest::Approx(2 * 0.25 + 3 * 0.5 / 3.0 + 0.125));
  const auto lm = levy_moments(Integrand::power(1.0, 1.0, 0.0, 1.0), 3);
  CHECK(lm[0] == doctest::Approx(0.5));
  CHECK(lm[2] == doctest::Approx(0.25));
  // moments from partitions agree with the Bell-polynomial form in the
  // cumulants (j-1)! m_j
  const std::vector<double> mm = {0.3, 1.7, -0.4, 2.2, 0.9, -1.1};
  std::vector<double> kappa(mm.size());
  for (std::size_t j = 0; j < mm.size(); ++j) kappa[j] = std::tgamma(static_cast<double>(j + 1)) * mm[j];
  for (int p = 1; p <= 6; ++p) {
    double viabell = 0.0;
    for (int k = 1; k <= p; ++k) viabell += bell_partial(p, k, kappa);
    CHECK(moments_from_levy(mm, p) == doctest::Approx(viabell).epsilon(1e-13));
  }
  CHECK(moment_terms(mm, 4).size() == 5);
}

TEST_CASE("even moment terms with a centered first moment") {
  std::vector<double> m = {0.0, 1.0, -0.5, 2.0, -1.0, 3.0, 0.5, 4.0};
  CHECK(even_moment_terms_nonnegative(m, 2));
  CHECK(even_moment_terms_nonnegative(m, 4));
  // with m_3 < 0, the j = (0,0,2) term of p = 6 is m_3^2 >= 0, still fine
  CHECK(even_moment_terms_nonnegative(m, 6));
  // p = 8 contains the term m_3 m_5 with both signs free
  std::vector<double> bad = {0.0, 1.0, 1.0, 1.0, -1.0, 1.0, 1.0, 1.0};
  CHECK_FALSE(even_moment_terms_nonnegative(bad, 8));
}

TEST_CASE("moment bounds") {
  const PnormBounds b = pnorm_bounds(Integrand::indicator(0.0, 1.0), 2.0);
  CHECK(b.lower == doctest::Approx(1.0));
  CHECK(b.upper == doctest::Approx(2.0));
  const PnormBounds b2 = pnorm_bounds(Integrand::indicator(0.0, 2.0), 2.0);
  CHECK(b2.lower == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(b2.upper == doctest::Approx(12.0).epsilon(1e-14));
  CHECK(b2.jensen_upper == doctest::Approx(6.0).epsilon(1e-14));  // E Gamma_2^2
  const PnormBounds b1 = pnorm_bounds(Integrand::constant(3.0, 0.0, 1.0), 1.0);
  CHECK(b1.lower == doctest::Approx(3.0));
  CHECK(b1.upper == doctest::Approx(3.0));
  CHECK_THROWS_AS(pnorm_bounds(Integrand::power(1.0, -2.0, 1.0, INFINITY), 2.0), PreconditionError);
}

TEST_CASE("Thorin descriptors") {
  const ThorinDescriptor c = thorin_from_integrand(Integrand::constant(2.0, 0.0, 1.0));
  for (double y : {0.1, 1.0, 5.0}) CHECK(c.k(y) == doctest::Approx(std::exp(-y / 2.0)).epsilon(1e-14));
  const ThorinDescriptor two = thorin_from_integrand(Integrand::piecewise({0.0, 0.5, 1.0}, {2.0, 1.0}));
  for (double y : {0.1, 1.0, 5.0}) {
    CHECK(two.k(y) == doctest::Approx(0.5 * std::exp(-y / 2.0) + 0.5 * std::exp(-y)).epsilon(1e-14));
  }
  CHECK(two.cdf(0.4) == 0.0);
  CHECK(two.cdf(0.5) == doctest::Approx(0.5));
  CHECK(two.cdf(1.0) == doctest::Approx(1.0));

  const Integrand back = integrand_from_thorin([&](double y) { return two.cdf(y); });
  CHECK(back(0.25) == doctest::Approx(2.0));
  CHECK(back(0.75) == doctest::Approx(1.0));
  const Integrand exact = integrand_from_thorin(two);
  CHECK(exact(0.25) == 2.0);
  CHECK(exact(0.75) == 1.0);

  const ThorinDescriptor pw = thorin_from_integrand(Integrand::power(1.0, 1.0, 0.0, 1.0));
  // int_0^1 e^{-y/u} du at y = 1
  CHECK(pw.k(1.0) == doctest::Approx(0.14849550677592205).epsilon(1e-9));
  std::vector<double> grid;
  for (int i = 0; i < 12; ++i) grid.push_back(0.05 * std::pow(1.6, i));
  CHECK(completely_monotone_on_grid([&](double y) { return pw.k(y); }, grid));
  CHECK_FALSE(completely_monotone_on_grid([](double y) { return std::sin(y); }, grid));
  CHECK_THROWS_AS(integrand_from_thorin([](double y) { return y > 1.0 ? 0.5 : 0.0; }), PreconditionError);
}

TEST_CASE("inverse process classifier and Gamma cdf") {
  CHECK(inverse_moment_finite(0.5, 100.0));
  CHECK(inverse_moment_finite(1.0, 0.3));
  CHECK_FALSE(inverse_moment_finite(1.0, 0.5));
  CHECK_FALSE(inverse_moment_finite(1.2, 0.01));
  for (const auto& c : kCdf) CHECK(gamma_cdf(c.x, c.t) == doctest::Approx(c.value).epsilon(1e-10));
}
