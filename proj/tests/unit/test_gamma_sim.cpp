#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "gammatime/errors.hpp"
#include "gammatime/gamma_sim.hpp"
#include "gammatime/harness.hpp"
#include "gammatime/rng.hpp"
#include "gammatime/specfun.hpp"

using namespace gammatime;

TEST_CASE("rng streams") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 100000; ++i) seen.insert(stream_seed(42, i));
  CHECK(seen.size() == 100000);
  Rng a(7), b(7);
  for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());
  // SplitMix64 reference output for seed 0
  Rng z(0);
  CHECK(z.next_u64() == 0xe220a8397b1dcdafULL);
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("rng distributions, loose moments") {
  Rng rng(123);
  const int n = 200000;
  double su = 0, se = 0, sn = 0, sn2 = 0, sg = 0, sg_small = 0, sl = 0;
  double umin = 1, umax = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    umin = std::min(umin, u);
    umax = std::max(umax, u);
    su += u;
    se += rng.exponential();
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
    sg += rng.gamma(2.5);
    sg_small += rng.gamma(0.3);
    sl += rng.lomax(4.0);
  }
  CHECK(umin > 0.0);
  CHECK(umax < 1.0);
  CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(se / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::fabs(sn / n) < 0.01);
  CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(sg / n == doctest::Approx(2.5).epsilon(0.01));
  CHECK(sg_small / n == doctest::Approx(0.3).epsilon(0.02));
  CHECK(sl / n == doctest::Approx(0.5).epsilon(0.03));  // Lomax mean 1/(p-2)
}

TEST_CASE("arrivals and base densities") {
  const auto s = sample_arrivals(50, 9);
  CHECK(s.size() == 50);
  CHECK(s.front() > 0.0);
  CHECK(std::is_sorted(s.begin(), s.end()));
  CHECK(sample_arrivals(50, 9) == s);
  CHECK(BaseDensity::parse("pareto:1.1").shape() == 1.1);
  CHECK(BaseDensity::parse("exp").kind() == BaseDensity::Kind::exponential);
  CHECK_THROWS_AS(BaseDensity::parse("pareto:1"), PreconditionError);
  CHECK_THROWS_AS(BaseDensity::parse("cauchy"), PreconditionError);
  CHECK(BaseDensity::pareto(3.0).pdf(0.0) == doctest::Approx(2.0));
  CHECK(RewardKind::parse("bernoulli:0.5").beta() == 0.5);
  CHECK_THROWS_AS(RewardKind::parse("bernoulli:2"), PreconditionError);
  HSeriesConfig bad;
  bad.terms = 0;
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
}

TEST_CASE("series paths") {
  HSeriesConfig cfg;
  cfg.terms = 100;
  cfg.horizon = 2.5;
  cfg.seed = 5;
  const JumpPath p = sample_gamma_path(cfg);
  CHECK(p.size() <= 300);
  CHECK(p.size() >= 290);
  for (double h : p.heights()) CHECK(h > 0.0);
  CHECK(p.times().back() < 3.0);
  const JumpPath q = sample_gamma_path(cfg);
  CHECK(p.times() == q.times());
  CHECK(p.heights() == q.heights());

  // the largest jump of each block is H(S_1) and the heights within a
  // block are H of increasing arrivals
  std::vector<double> block;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.times()[i] < 1.0) block.push_back(p.heights()[i]);
  }
  std::sort(block.begin(), block.end(), std::greater<>());
  for (std::size_t i = 1; i < block.size(); ++i) CHECK(block[i] < block[i - 1]);
}

TEST_CASE("integrals, symmetric and subordinated samples are deterministic") {
  HSeriesConfig cfg;
  cfg.seed = 77;
  const Integrand f = Integrand::indicator(0.0, 1.0);
  CHECK(sample_gamma_integral(f, cfg, RewardKind::none()) > 0.0);
  CHECK(sample_gamma_integral(f, cfg, RewardKind::none()) == sample_gamma_integral(f, cfg, RewardKind::none()));
  CHECK(sample_symmetric(1.0, cfg) == sample_symmetric(1.0, cfg));
  CHECK(sample_subordinated_wiener(1.0, cfg) == sample_subordinated_wiener(1.0, cfg));
  CHECK_THROWS_AS(sample_gamma_integral(Integrand::power(1.0, -2.0, 1.0, INFINITY), cfg, RewardKind::none()),
                  PreconditionError);
  cfg.density = BaseDensity::exponential();
  CHECK(std::isfinite(sample_gamma_integral(Integrand::power(1.0, -2.0, 1.0, INFINITY), cfg, RewardKind::none())));
}

TEST_CASE("inverse paths") {
  HSeriesConfig cfg;
  cfg.seed = 3;
  const InverseFn inv = sample_inverse_path(cfg, 0.5);
  CHECK(inv(-1.0).value() == 0.0);
  CHECK(inv(inv.cap()).is_pos_inf());
  CHECK(inv(0.1 * inv.cap()).value() <= inv(0.2 * inv.cap()).value());
}

TEST_CASE("partition scheme") {
  const Integrand f = Integrand::power(1.0, 1.0, 0.0, 1.0);
  CHECK(sample_partition_path(f, 1, PartitionRule::left, 11) == 0.0);
  CHECK(partition_error(Integrand::piecewise({0.0, 0.5, 1.0}, {3.0, -1.0}), 2, PartitionRule::average).value() == 0.0);
  // the left rule reads f(1/2) = 3 for the second cell
  CHECK(partition_error(Integrand::piecewise({0.0, 0.5, 1.0}, {3.0, -1.0}), 2, PartitionRule::left).value() == 8.0);
  CHECK(partition_error(Integrand::power(1.0, -0.5, 0.0, 1.0), 4, PartitionRule::average).is_pos_inf());
  for (std::size_t n : {1u, 10u, 100u}) {
    const double nn = static_cast<double>(n);
    CHECK(partition_error(f, n, PartitionRule::left).value() == doctest::Approx(1.0 / (3 * nn * nn)).epsilon(1e-12));
    CHECK(partition_error(f, n, PartitionRule::average).value() == doctest::Approx(1.0 / (12 * nn * nn)).epsilon(1e-12));
  }
  const auto a = partition_values(f, 4, PartitionRule::average);
  CHECK(a[0] == doctest::Approx(0.125));
  CHECK_THROWS_AS(partition_values(Integrand::indicator(0.0, 2.0), 4, PartitionRule::left), PreconditionError);
  CHECK(parse_partition_rule("average") == PartitionRule::average);
}

TEST_CASE("remainder probe") {
  const Integrand f = Integrand::indicator(0.0, 1.0);
  const std::size_t one[] = {4};
  CHECK_THROWS_AS(remainder_decay_probe(f, 2, one, 10, 1), PreconditionError);
  const std::size_t ns[] = {2, 4, 6, 8, 10};
  CHECK_THROWS_AS(remainder_decay_probe(f, 3, ns, 10, 1), PreconditionError);
  const RemainderProbe mean = remainder_decay_probe(f, 1, ns, 4000, 1);
  CHECK(mean.slope.value() < -0.5);
  const RemainderProbe sq = remainder_decay_probe(f, 2, ns, 4000, 1);
  CHECK(sq.slope.value() < -std::log(3.0) + 0.15);
  CHECK(terms_for_bias(1, 1.0, 1e-15) == 50);
  CHECK(terms_for_bias(2, 1.0, 1.0) == 1);
}

TEST_CASE("heavy-tailed base density beats the exponential one at fixed N") {
  const Integrand f = Integrand::indicator(0.0, 10.0);
  HSeriesConfig cfg;
  cfg.terms = 50;
  cfg.seed = 2024;
  cfg.density = BaseDensity::pareto(1.1);
  const auto pareto = truncation_deficit(f, cfg, 2000);
  cfg.density = BaseDensity::exponential();
  const auto expo = truncation_deficit(f, cfg, 2000);
  CHECK(pareto.first + 3 * pareto.second < expo.first - 3 * expo.second);
}
