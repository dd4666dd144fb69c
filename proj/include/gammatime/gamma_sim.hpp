#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gammatime/ext_real.hpp"
#include "gammatime/integrand.hpp"
#include "gammatime/jumpcalc.hpp"
#include "gammatime/rng.hpp"

namespace gammatime {

// Law of the jump locations U_n of the shot-noise series.
//   uniform01    uniform on unit blocks [k, k+1), one independent series per block
//   exponential  density e^{-u} on [0, inf)
//   pareto(p)    density (p-1)(1+u)^{-p} on [0, inf), p > 1
class BaseDensity {
 public:
  enum class Kind { uniform01, exponential, pareto };

  static BaseDensity uniform01() { return BaseDensity(Kind::uniform01, 0.0); }
  static BaseDensity exponential() { return BaseDensity(Kind::exponential, 0.0); }
  static BaseDensity pareto(double p);
  // "uniform", "exp" or "pareto:P".
  static BaseDensity parse(const std::string& text);
  std::string str() const;

  Kind kind() const { return kind_; }
  double shape() const { return p_; }
  double pdf(double u) const;
  double sample(Rng& rng) const;

 private:
  BaseDensity(Kind k, double p) : kind_(k), p_(p) {}
  Kind kind_;
  double p_;
};

struct HSeriesConfig {
  std::size_t terms = 200;  // N, per unit block for uniform01
  BaseDensity density = BaseDensity::uniform01();
  double horizon = 1.0;     // uniform01 covers [0, ceil(horizon))
  std::uint64_t seed = 0;

  void validate() const;
  std::size_t blocks() const;
};

// Marks K_n multiplying the jumps.
class RewardKind {
 public:
  enum class Kind { none, bernoulli, quantile };

  static RewardKind none() { return RewardKind(Kind::none, 0.0, {}); }
  // K = +1 with probability (1+beta)/2, else -1; E K = beta.
  static RewardKind bernoulli(double beta);
  // K = q(V) with V uniform on (0,1).
  static RewardKind quantile(std::function<double(double)> q);
  // "none" or "bernoulli:B".
  static RewardKind parse(const std::string& text);
  std::string str() const;

  Kind kind() const { return kind_; }
  double beta() const { return beta_; }
  double sample(Rng& rng) const;

 private:
  RewardKind(Kind k, double beta, std::function<double(double)> q)
      : kind_(k), beta_(beta), q_(std::move(q)) {}
  Kind kind_;
  double beta_;
  std::function<double(double)> q_;
};

// S_1 < ... < S_n, partial sums of unit exponentials.
std::vector<double> sample_arrivals(std::size_t n, Rng& rng);
std::vector<double> sample_arrivals(std::size_t n, std::uint64_t seed);

// Truncated series sum_{n <= N} H(S_n p(U_n)) 1{U_n <= t} as a jump path.
JumpPath sample_gamma_path(const HSeriesConfig& config);
JumpPath sample_gamma_path(const HSeriesConfig& config, Rng& rng);

// One replicate of sum_n K_n H(S_n p(U_n)) f(U_n).  With uniform01 the blocks
// cover both the horizon and the support of f, which must then be bounded.
double sample_gamma_integral(const Integrand& f, const HSeriesConfig& config, const RewardKind& reward);
double sample_gamma_integral(const Integrand& f, const HSeriesConfig& config, const RewardKind& reward, Rng& rng);

// Gamma(s, 1) variate as the series sum_{n <= N ceil(s)} H(S_n / s).
double gamma_variate_hseries(double s, std::size_t terms, Rng& rng);

// Gamma_{t/2} - Gamma'_{t/2}, two independent series.
double sample_symmetric(double t, const HSeriesConfig& config);
double sample_symmetric(double t, const HSeriesConfig& config, Rng& rng);

// sqrt(2) W(Gamma_{t/2}) = sqrt(2 Gamma_{t/2}) Z.
double sample_subordinated_wiener(double t, const HSeriesConfig& config);
double sample_subordinated_wiener(double t, const HSeriesConfig& config, Rng& rng);

// Inverse of a truncated uniform01 path covering [0, ceil(max(horizon, 1))).
// Beyond the mass of the path the inverse is +inf.
InverseFn sample_inverse_path(const HSeriesConfig& config, double v_max);
InverseFn sample_inverse_path(const HSeriesConfig& config, double v_max, Rng& rng);

enum class PartitionRule { left, average };
PartitionRule parse_partition_rule(const std::string& text);

// Step values a_j of the approximation on the grid u_j = j/n.
std::vector<double> partition_values(const Integrand& f, std::size_t n, PartitionRule rule);

// sum_j a_j (Gamma_{u_j} - Gamma_{u_{j-1}}) with i.i.d. Gamma(1/n) increments.
// f must vanish outside [0, 1].
double sample_partition_path(const Integrand& f, std::size_t n, PartitionRule rule, std::uint64_t seed);
double sample_partition_path(const Integrand& f, std::size_t n, PartitionRule rule, Rng& rng);

// ||f - g||_2^2 for the step function g of partition_values; +inf when f is
// not square integrable.
ExtReal partition_error(const Integrand& f, std::size_t n, PartitionRule rule);

struct RemainderProbe {
  std::vector<double> n_values;
  std::vector<double> log_moments;  // ln of the empirical E R_N^p
  ExtReal slope;                    // least-squares slope; -inf if some E R_N^p is 0
};

// Simulates R_N = sum_n H(S'_N + S_n) f(U_n) with an independent S'_N ~
// Gamma(N) and fits ln E R_N^p against N.  p must be even, or 1 for the
// plain mean.  f >= 0 must vanish outside [0, 1].
RemainderProbe remainder_decay_probe(const Integrand& f, int p, std::span<const std::size_t> n_list,
                                     std::size_t reps, std::uint64_t seed);

// E R_N = lambda f - E(truncated series) for the configured base density,
// estimated from `reps` replicates; returns {mean, standard error}.
std::pair<double, double> truncation_deficit(const Integrand& f, const HSeriesConfig& config,
                                             std::size_t reps);

// Smallest N with (p+1)^{-N} * scale <= target, i.e. the truncation bound of
// the remainder p-th moment below the target.
std::size_t terms_for_bias(int p, double scale, double target);

}  // namespace gammatime
