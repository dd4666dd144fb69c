#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gammatime/gamma_sim.hpp"
#include "gammatime/integrand.hpp"
#include "gammatime/martingales.hpp"
#include "gammatime/parallel.hpp"
#include "gammatime/rng.hpp"

namespace gammatime {

// One Monte Carlo comparison.  For two-sided reports pass means |z| <= z_max;
// one-sided (upper) reports pass when estimate <= target + z_max * std_error.
struct McReport {
  std::string label;
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t reps = 0;
  double target = 0.0;
  double z = 0.0;
  bool one_sided = false;
  bool pass = false;
};

// Mean and sd / sqrt(n) of the samples, both with compensated sums.  A zero
// standard error gives z = 0 on an exact hit and +-inf otherwise.
McReport make_report(std::string label, std::span<const double> samples, double target, double z_max = 3.0);
McReport make_upper_report(std::string label, std::span<const double> samples, double bound, double z_max = 3.0);

// stream(i) = stream_seed(master_seed, i), SplitMix64 of master + gamma (i+1).
struct SeedPolicy {
  std::uint64_t master_seed = 0;

  std::uint64_t stream(std::uint64_t i) const { return stream_seed(master_seed, i); }
  // Independent policy for a named check: the master mixed with FNV-1a(name).
  SeedPolicy for_check(std::string_view name) const { return {stream_seed(master_seed, fnv1a(name))}; }
};

struct McConfig {
  std::size_t reps = 100000;
  std::size_t terms = 200;
  BaseDensity density = BaseDensity::uniform01();
  SeedPolicy seeds;
  unsigned jobs = 1;
  double z_max = 3.0;

  HSeriesConfig series(double horizon = 1.0) const;
};

// fn(rng) for every replicate i, with rng seeded from seeds.stream(i).  The
// output is independent of the number of jobs.
template <class T, class Fn>
std::vector<T> replicate(const McConfig& config, Fn fn) {
  return parallel_map<T>(config.reps, config.jobs, [&](std::size_t i) {
    Rng rng(config.seeds.stream(i));
    return fn(rng);
  });
}

// E exp(-theta Gamma f) against laplace_gamma, one report per theta.
std::vector<McReport> verify_laplace(const Integrand& f, std::span<const double> thetas, const McConfig& config);

// Real and imaginary parts of E exp(i theta Gamma^{(beta)} f) against
// fourier_gamma; two reports per theta.
std::vector<McReport> verify_fourier(const Integrand& f, std::span<const double> thetas, double beta,
                                     const McConfig& config);

// E(Gamma f)^p against moments_from_levy, one report per p in 1..6.
std::vector<McReport> verify_moments(const Integrand& f, std::span<const int> ps, const McConfig& config);

// E[Gamma_a Gamma_c] = (a/c) E Gamma_c^2 = a + a c, both values read off one
// path on [0, ceil(c)).
McReport verify_projection(double a, double c, const McConfig& config);

// P(|Gamma^{(beta)} f| > eps) <= (3/eps) Phi_1(f) for beta != 0, or
// (1/eps) Phi_2(f) for beta = 0; one-sided.
McReport verify_tail_bound(const Integrand& f, double beta, double eps, const McConfig& config);

// Martingale checks at time t:
//   mean       E M_t = 1
//   bracket    E M_t^2 = c_2^t
//   poly:N     E P_N = 0 (gamma) or E P~_N = 0 (symmetric)
//   increment  E[(M_t - M_s) M_s] = 0 with s = t/2
//   laplace    E L_t(theta) = 1/theta (gamma kind, theta > 0)
McReport verify_martingale(const MartingaleKind& kind, double t, const std::string& check, const McConfig& config);

// E L_t(theta) by defensive importance sampling.  L_t has infinite variance
// under the Gamma law, so X is drawn from the equal mixture of Gamma(t) and
// theta Gamma_t / Gamma'_1 (a beta-prime law with an x^{-2} tail), both built
// from the series, and weighted by the density ratio.
McReport verify_laplace_martingale(double t, double theta, const McConfig& config);

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);
// Asymptotic critical value sqrt(-ln(alpha/2) / 2) sqrt((n+m)/(n m)).
double ks_critical_value(std::size_t n, std::size_t m, double alpha);

}  // namespace gammatime
