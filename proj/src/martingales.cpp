#include "gammatime/martingales.hpp"

#include <algorithm>
#include <cmath>

#include "gammatime/errors.hpp"
#include "gammatime/gamma_sim.hpp"
#include "gammatime/parallel.hpp"
#include "gammatime/rng.hpp"

namespace gammatime {

MartingaleKind MartingaleKind::gamma(double theta) {
  if (!(theta > -1.0) || !std::isfinite(theta)) throw DomainError("gamma martingale needs theta > -1");
  return MartingaleKind(Kind::gamma, theta);
}

MartingaleKind MartingaleKind::symmetric(double theta) {
  if (!(std::fabs(theta) < 1.0)) throw DomainError("symmetric martingale needs |theta| < 1");
  return MartingaleKind(Kind::symmetric, theta);
}

MartingaleKind MartingaleKind::parse(const std::string& name, double theta) {
  if (name == "gamma") return gamma(theta);
  if (name == "symmetric") return symmetric(theta);
  throw PreconditionError("unknown martingale kind '" + name + "' (gamma, symmetric)");
}

double log_exp_martingale(const MartingaleKind& kind, double t, double path_value) {
  if (!(t >= 0.0)) throw DomainError("exp_martingale: t must be >= 0");
  const double th = kind.theta();
  if (kind.kind() == MartingaleKind::Kind::gamma) {
    if (path_value < 0.0) throw DomainError("exp_martingale: a Gamma path value is >= 0");
    return t * std::log1p(th) - th * path_value;
  }
  return 0.5 * t * std::log1p(-th * th) - th * path_value;
}

double exp_martingale(const MartingaleKind& kind, double t, double path_value) {
  return std::exp(log_exp_martingale(kind, t, path_value));
}

double pth_moment_base(const MartingaleKind& kind, double p) {
  if (!(p > 0.0)) throw DomainError("pth_moment_base: p must be positive");
  const double th = kind.theta();
  if (kind.kind() == MartingaleKind::Kind::gamma) {
    if (!(p * th > -1.0)) throw DomainError("pth_moment_base: gamma kind needs p*theta > -1");
    return std::exp(p * std::log1p(th) - std::log1p(p * th));
  }
  if (!(std::fabs(p * th) < 1.0)) throw DomainError("pth_moment_base: symmetric kind needs |p*theta| < 1");
  return std::exp(0.5 * (p * std::log1p(-th * th) - std::log1p(-p * p * th * th)));
}

double falling_factorial(double t, int j) {
  if (j < 0) throw PreconditionError("falling_factorial: j must be >= 0");
  double r = 1.0;
  for (int i = 0; i < j; ++i) r *= t - i;
  return r;
}

double real_binomial(double t, int j) {
  double r = falling_factorial(t, j);
  for (int i = 2; i <= j; ++i) r /= i;
  return r;
}

namespace {

long long int_binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long long int_factorial(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

std::vector<double> poly_martingale_coefficients(MartingaleKind::Kind kind, int n, double t) {
  if (n < 1 || n > 8) throw PreconditionError("poly_martingale: n must be in 1..8");
  std::vector<double> c(static_cast<std::size_t>(n + 1), 0.0);
  if (kind == MartingaleKind::Kind::gamma) {
    for (int j = 0; j <= n; ++j) {
      const double sign = j % 2 ? -1.0 : 1.0;
      c[static_cast<std::size_t>(j)] = sign * static_cast<double>(int_binomial(n, j)) * falling_factorial(t, j);
    }
  } else {
    for (int j = 0; 2 * j <= n; ++j) {
      const double sign = j % 2 ? -1.0 : 1.0;
      c[static_cast<std::size_t>(2 * j)] = sign * static_cast<double>(int_binomial(n, 2 * j)) *
                                           real_binomial(0.5 * t, j) * static_cast<double>(int_factorial(2 * j));
    }
  }
  return c;
}

double poly_martingale(MartingaleKind::Kind kind, int n, double t, double path_value) {
  const std::vector<double> c = poly_martingale_coefficients(kind, n, t);
  double acc = 0.0;
  for (double ci : c) acc = acc * path_value + ci;
  return acc;
}

double laplace_martingale(double t, double theta, double path_value, int k) {
  if (!(theta > 0.0)) throw DomainError("laplace_martingale: theta must be positive");
  if (!(t >= 0.0)) throw DomainError("laplace_martingale: t must be >= 0");
  if (!(path_value >= 0.0)) throw DomainError("laplace_martingale: path value must be >= 0");
  if (k < 1) throw PreconditionError("laplace_martingale: k must be >= 1");
  return std::exp(std::lgamma(t + k) + path_value - (t + k) * std::log(path_value + theta));
}

double oblique_bracket_base(double theta) {
  if (!(1.0 + 2.0 * theta > 0.0)) throw DomainError("oblique_bracket_base: needs 1 + 2 theta > 0");
  return (1.0 + theta) * (1.0 + theta) / (1.0 + 2.0 * theta);
}

double oblique_bracket_rate(double theta, double t) {
  const double b = oblique_bracket_base(theta);
  return std::log(b) * std::pow(b, t);
}

double sinh_martingale(double t, double s_value, std::size_t inner_reps, std::uint64_t seed, std::size_t terms) {
  if (inner_reps < 1) throw PreconditionError("sinh_martingale: inner_reps must be >= 1");
  if (!(t >= 0.0)) throw DomainError("sinh_martingale: t must be >= 0");
  auto kernel = [](double d) { return d == 0.0 ? 1.0 : std::sinh(d) / d; };
  if (t == 0.0) return 2.0 * kernel(s_value);
  HSeriesConfig cfg;
  cfg.terms = terms;
  std::vector<double> xs(inner_reps);
  for (std::size_t i = 0; i < inner_reps; ++i) {
    Rng rng(stream_seed(seed, i));
    xs[i] = kernel(s_value - sample_symmetric(t, cfg, rng));
  }
  return 2.0 * compensated_sum(xs) / static_cast<double>(inner_reps);
}

SdeResidual exp_martingale_sde_residual(const JumpPath& path, double theta, std::span<const double> t_grid) {
  const MartingaleKind kind = MartingaleKind::gamma(theta);
  if (t_grid.size() < 2) throw PreconditionError("exp_martingale_sde_residual: grid needs two points");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) throw PreconditionError("exp_martingale_sde_residual: grid must increase");
  }
  if (t_grid.front() < 0.0) throw PreconditionError("exp_martingale_sde_residual: grid must start at t >= 0");
  for (double h : path.heights()) {
    if (h < 0.0) throw PreconditionError("exp_martingale_sde_residual: needs a nondecreasing (Gamma) path");
  }
  auto m_at = [&](double t) { return exp_martingale(kind, t, path.amass(t)); };
  auto m_before = [&](double t) { return exp_martingale(kind, t, path.left_limit(t)); };
  const double rate = std::log1p(theta);

  SdeResidual r;
  const double m0 = m_at(t_grid.front());
  double drift = 0.0;
  double jumps = 0.0;
  double jumps_lin = 0.0;
  double sq = 0.0;
  double sq_formula = 0.0;
  double sq_lin = 0.0;
  std::size_t next_jump = static_cast<std::size_t>(
      std::upper_bound(path.times().begin(), path.times().end(), t_grid.front()) - path.times().begin());
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    drift += rate * m_at(t_grid[k - 1]) * (t_grid[k] - t_grid[k - 1]);
    while (next_jump < path.size() && path.times()[next_jump] <= t_grid[k]) {
      const double u = path.times()[next_jump];
      const double h = path.heights()[next_jump];
      const double before = m_before(u);
      const double dm = m_at(u) - before;
      jumps += before * std::expm1(-theta * h);
      jumps_lin += -theta * before * h;
      sq += dm * dm;
      sq_formula += before * before * std::expm1(-theta * h) * std::expm1(-theta * h);
      sq_lin += theta * theta * before * before * h * h;
      ++next_jump;
    }
    const double lhs = m_at(t_grid[k]) - m0;
    r.drift = std::max(r.drift, std::fabs(lhs - drift - jumps));
    r.drift_linearized = std::max(r.drift_linearized, std::fabs(lhs - drift - jumps_lin));
    r.bracket = std::max(r.bracket, std::fabs(sq - sq_formula));
    r.bracket_linearized = std::max(r.bracket_linearized, std::fabs(sq - sq_lin));
  }
  return r;
}

}  // namespace gammatime
