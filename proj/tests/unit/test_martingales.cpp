#include <cmath>
#include <vector>

#include "doctest.h"
#include "gammatime/errors.hpp"
#include "gammatime/gamma_sim.hpp"
#include "gammatime/martingales.hpp"

using namespace gammatime;

TEST_CASE("exponential martingales") {
  CHECK(exp_martingale(MartingaleKind::gamma(0.0), 3.0, 1.7) == 1.0);
  CHECK(exp_martingale(MartingaleKind::symmetric(0.0), 3.0, -1.7) == 1.0);
  CHECK(exp_martingale(MartingaleKind::gamma(1.0), 1.0, std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(exp_martingale(MartingaleKind::symmetric(0.6), 2.0, 0.0) == doctest::Approx(0.64).epsilon(1e-15));
  // far outside double range in linear space, fine in log space
  CHECK(log_exp_martingale(MartingaleKind::gamma(0.5), 1e4, 1e4) == doctest::Approx(1e4 * (std::log(1.5) - 0.5)));
  CHECK_THROWS_AS(MartingaleKind::gamma(-1.0), DomainError);
  CHECK_THROWS_AS(MartingaleKind::symmetric(1.0), DomainError);
  CHECK_THROWS_AS(exp_martingale(MartingaleKind::gamma(0.5), 1.0, -0.1), DomainError);
  CHECK_THROWS_AS(MartingaleKind::parse("levy", 0.1), PreconditionError);
}

TEST_CASE("moment bases") {
  CHECK(pth_moment_base(MartingaleKind::gamma(0.3), 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pth_moment_base(MartingaleKind::symmetric(0.3), 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pth_moment_base(MartingaleKind::gamma(0.3), 2.0) == doctest::Approx(1.05625).epsilon(1e-14));
  CHECK(pth_moment_base(MartingaleKind::gamma(0.5), 2.0) == doctest::Approx(oblique_bracket_base(0.5)).epsilon(1e-15));
  CHECK_THROWS_AS(pth_moment_base(MartingaleKind::gamma(-0.6), 2.0), DomainError);
  CHECK_THROWS_AS(pth_moment_base(MartingaleKind::symmetric(0.6), 2.0), DomainError);
  CHECK(oblique_bracket_base(0.0) == 1.0);
  CHECK(oblique_bracket_base(1.0) == doctest::Approx(4.0 / 3.0));
  CHECK_THROWS_AS(oblique_bracket_base(-0.5), DomainError);
  CHECK(oblique_bracket_rate(1.0, 2.0) == doctest::Approx(std::log(4.0 / 3.0) * 16.0 / 9.0));
}

TEST_CASE("polynomial martingales") {
  const double t = 1.7;
  auto p2 = poly_martingale_coefficients(MartingaleKind::Kind::gamma, 2, t);
  CHECK(p2 == std::vector<double>{1.0, -2.0 * t, t * (t - 1.0)});
  auto q2 = poly_martingale_coefficients(MartingaleKind::Kind::symmetric, 2, t);
  CHECK(q2 == std::vector<double>{1.0, 0.0, -t});
  auto q4 = poly_martingale_coefficients(MartingaleKind::Kind::symmetric, 4, t);
  REQUIRE(q4.size() == 5);
  CHECK(q4[2] == doctest::Approx(-6.0 * t));
  CHECK(q4[4] == doctest::Approx(3.0 * t * (t - 2.0)));
  CHECK(poly_martingale(MartingaleKind::Kind::gamma, 1, t, 2.0) == doctest::Approx(2.0 - t));
  CHECK_THROWS_AS(poly_martingale_coefficients(MartingaleKind::Kind::gamma, 9, t), PreconditionError);
  for (double x : {0.3, 2.5, 7.25}) {
    for (int j = 0; j <= 6; ++j) {
      if (x + 1.0 - j <= 0.0 && std::floor(x + 1.0 - j) == x + 1.0 - j) continue;
      CHECK(falling_factorial(x, j) ==
            doctest::Approx(std::tgamma(x + 1.0) / std::tgamma(x + 1.0 - j)).epsilon(1e-12));
    }
  }
  CHECK(real_binomial(0.5, 2) == doctest::Approx(-0.125));
}

TEST_CASE("Laplace-transform martingale") {
  CHECK(laplace_martingale(1e-300, 2.0, 0.0) == doctest::Approx(0.5));
  CHECK(laplace_martingale(1.0, 1.0, 1.0) == doctest::Approx(std::exp(1.0) / 4.0));
  CHECK(std::isfinite(laplace_martingale(3.0, 1.0, 700.0)));
  CHECK(laplace_martingale(2.0, 1.0, 0.0, 3) == doctest::Approx(24.0));
  CHECK_THROWS_AS(laplace_martingale(1.0, 0.0, 1.0), DomainError);
}

TEST_CASE("sinh estimator") {
  CHECK(sinh_martingale(0.0, 0.0, 5, 1) == 2.0);
  CHECK(sinh_martingale(0.0, 1.5, 5, 1) == doctest::Approx(2.0 * std::sinh(1.5) / 1.5));
  CHECK(sinh_martingale(0.5, 0.3, 200, 9) == sinh_martingale(0.5, 0.3, 200, 9));
  CHECK(sinh_martingale(0.5, 0.3, 200, 9) >= 2.0);  // sinh(x)/x >= 1
  CHECK_THROWS_AS(sinh_martingale(0.5, 0.3, 0, 9), PreconditionError);
}

namespace {
std::vector<double> grid(double lo, double hi, int m) {
  std::vector<double> g;
  for (int i = 0; i <= m; ++i) g.push_back(lo + (hi - lo) * i / m);
  return g;
}
}  // namespace

TEST_CASE("pathwise dynamics of the exponential martingale") {
  const JumpPath empty;
  const double r16 = exp_martingale_sde_residual(empty, 0.5, grid(0.0, 1.0, 16)).drift;
  const double r32 = exp_martingale_sde_residual(empty, 0.5, grid(0.0, 1.0, 32)).drift;
  CHECK(r16 > 0.0);
  CHECK(r32 / r16 == doctest::Approx(0.5).epsilon(0.05));

  const JumpPath one({0.4}, {0.8});
  const SdeResidual single = exp_martingale_sde_residual(one, 0.5, grid(0.0, 1.0, 8));
  CHECK(single.bracket < 1e-15);
  CHECK(single.bracket_linearized > 1e-3);

  HSeriesConfig cfg;
  cfg.terms = 100;
  cfg.seed = 4;
  const JumpPath path = sample_gamma_path(cfg);
  double prev = INFINITY;
  for (int m : {64, 256, 1024, 4096}) {
    const SdeResidual r = exp_martingale_sde_residual(path, 0.5, grid(0.0, 1.0, m));
    CHECK(r.drift <= 2.0 / m);
    CHECK(r.drift < prev);
    CHECK(r.bracket < 1e-13);
    prev = r.drift;
  }
  CHECK_THROWS_AS(exp_martingale_sde_residual(path, 0.5, grid(0.0, 1.0, 0)), PreconditionError);
}
