#include "gammatime/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include "gammatime/analytic.hpp"
#include "gammatime/errors.hpp"
#include "gammatime/modular.hpp"

namespace gammatime {

namespace {

void fill_stats(McReport& r, std::span<const double> xs) {
  r.reps = xs.size();
  if (xs.empty()) throw PreconditionError("report: no samples");
  const double n = static_cast<double>(xs.size());
  r.estimate = compensated_sum(xs) / n;
  if (xs.size() < 2) {
    r.std_error = 0.0;
    return;
  }
  std::vector<double> sq(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = (xs[i] - r.estimate) * (xs[i] - r.estimate);
  r.std_error = std::sqrt(compensated_sum(sq) / (n - 1.0) / n);
}

double z_score(double estimate, double target, double se) {
  if (se > 0.0) return (estimate - target) / se;
  if (estimate == target) return 0.0;
  return estimate > target ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

std::vector<double> map_samples(std::span<const double> xs, double (*fn)(double, double), double arg) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = fn(xs[i], arg);
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double sample_kind(const MartingaleKind& kind, double t, const McConfig& config, Rng& rng) {
  if (kind.kind() == MartingaleKind::Kind::gamma) return gamma_variate_hseries(t, config.terms, rng);
  return sample_symmetric(t, config.series(), rng);
}

}  // namespace

McReport make_report(std::string label, std::span<const double> samples, double target, double z_max) {
  McReport r;
  r.label = std::move(label);
  fill_stats(r, samples);
  r.target = target;
  r.z = z_score(r.estimate, target, r.std_error);
  r.pass = std::fabs(r.z) <= z_max;
  return r;
}

McReport make_upper_report(std::string label, std::span<const double> samples, double bound, double z_max) {
  McReport r;
  r.label = std::move(label);
  fill_stats(r, samples);
  r.target = bound;
  r.one_sided = true;
  r.z = z_score(r.estimate, bound, r.std_error);
  r.pass = r.estimate <= bound + z_max * r.std_error;
  return r;
}

HSeriesConfig McConfig::series(double horizon) const {
  HSeriesConfig c;
  c.terms = terms;
  c.density = density;
  c.horizon = horizon;
  return c;
}

std::vector<McReport> verify_laplace(const Integrand& f, std::span<const double> thetas, const McConfig& config) {
  if (!f.is_nonnegative()) throw PreconditionError("verify_laplace: f must be nonnegative");
  if (gamma_integrable(f, 1.0) != Integrability::integrable) {
    throw PreconditionError("verify_laplace: Gamma f is not defined for this f");
  }
  const HSeriesConfig series = config.series();
  const RewardKind reward = RewardKind::none();
  const std::vector<double> xs =
      replicate<double>(config, [&](Rng& rng) { return sample_gamma_integral(f, series, reward, rng); });
  std::vector<McReport> out;
  for (double theta : thetas) {
    if (!(theta >= 0.0)) throw DomainError("verify_laplace: theta must be >= 0");
    const auto vals = map_samples(xs, [](double x, double th) { return std::exp(-th * x); }, theta);
    out.push_back(make_report("laplace theta=" + num(theta), vals, laplace_gamma(f, theta), config.z_max));
  }
  return out;
}

std::vector<McReport> verify_fourier(const Integrand& f, std::span<const double> thetas, double beta,
                                     const McConfig& config) {
  if (gamma_integrable(f, beta) != Integrability::integrable) {
    throw PreconditionError("verify_fourier: Gamma f is not defined for this f and beta");
  }
  const HSeriesConfig series = config.series();
  const RewardKind reward = RewardKind::bernoulli(beta);
  const std::vector<double> xs =
      replicate<double>(config, [&](Rng& rng) { return sample_gamma_integral(f, series, reward, rng); });
  std::vector<McReport> out;
  for (double theta : thetas) {
    const std::complex<double> target = fourier_gamma(f, theta, beta);
    const auto re = map_samples(xs, [](double x, double th) { return std::cos(th * x); }, theta);
    const auto im = map_samples(xs, [](double x, double th) { return std::sin(th * x); }, theta);
    const std::string tag = " theta=" + num(theta) + " beta=" + num(beta);
    out.push_back(make_report("fourier re" + tag, re, target.real(), config.z_max));
    out.push_back(make_report("fourier im" + tag, im, target.imag(), config.z_max));
  }
  return out;
}

std::vector<McReport> verify_moments(const Integrand& f, std::span<const int> ps, const McConfig& config) {
  if (!f.is_nonnegative()) throw PreconditionError("verify_moments: f must be nonnegative");
  int p_max = 0;
  for (int p : ps) {
    if (p < 1 || p > 6) throw PreconditionError("verify_moments: p must be in 1..6");
    if (!p_moment_exists(f, 2.0 * p)) throw PreconditionError("verify_moments: E(Gamma f)^{2p} must be finite");
    p_max = std::max(p_max, p);
  }
  const std::vector<double> m = levy_moments(f, p_max);
  const HSeriesConfig series = config.series();
  const RewardKind reward = RewardKind::none();
  const std::vector<double> xs =
      replicate<double>(config, [&](Rng& rng) { return sample_gamma_integral(f, series, reward, rng); });
  std::vector<McReport> out;
  for (int p : ps) {
    const auto vals = map_samples(xs, [](double x, double q) { return std::pow(x, q); }, p);
    out.push_back(make_report("moment p=" + std::to_string(p), vals, moments_from_levy(m, p), config.z_max));
  }
  return out;
}

McReport verify_projection(double a, double c, const McConfig& config) {
  if (!(a >= 0.0) || !(c > 0.0) || a > c) throw PreconditionError("verify_projection: needs 0 <= a <= c");
  const HSeriesConfig series = config.series(c);
  const std::vector<double> xs = replicate<double>(config, [&](Rng& rng) {
    const JumpPath path = sample_gamma_path(series, rng);
    return path.amass(a) * path.amass(c);
  });
  return make_report("projection a=" + num(a) + " c=" + num(c), xs, a + a * c, config.z_max);
}

McReport verify_tail_bound(const Integrand& f, double beta, double eps, const McConfig& config) {
  if (!(eps > 0.0) || eps > 0.5) throw PreconditionError("verify_tail_bound: eps must be in (0, 1/2]");
  const bool skewed = beta != 0.0;
  const ExtReal phi = modular_value(skewed ? ModularKind::phi1() : ModularKind::phi2(), f);
  if (!phi.is_finite()) throw PreconditionError("verify_tail_bound: the modular of f diverges");
  const double bound = (skewed ? 3.0 : 1.0) / eps * phi.value();
  const HSeriesConfig series = config.series();
  const RewardKind reward = RewardKind::bernoulli(beta);
  const std::vector<double> xs = replicate<double>(config, [&](Rng& rng) {
    return std::fabs(sample_gamma_integral(f, series, reward, rng)) > eps ? 1.0 : 0.0;
  });
  return make_upper_report("tail eps=" + num(eps) + " beta=" + num(beta), xs, bound, config.z_max);
}

McReport verify_laplace_martingale(double t, double theta, const McConfig& config) {
  if (!(t > 0.0) || !(theta > 0.0)) throw DomainError("verify_laplace_martingale: t and theta must be positive");
  const double lg_t = std::lgamma(t);
  const double ln_half = std::log(0.5);
  const std::vector<double> xs = replicate<double>(config, [&](Rng& rng) {
    const bool heavy = rng.uniform() < 0.5;
    double x = gamma_variate_hseries(t, config.terms, rng);
    if (heavy) x = theta * x / gamma_variate_hseries(1.0, config.terms, rng);
    const double lx = std::log(x);
    const double log_g = (t - 1.0) * lx - x - lg_t;
    const double y = x / theta;
    const double log_bp = std::log(t) - std::log(theta) + (t - 1.0) * std::log(y) - (t + 1.0) * std::log1p(y);
    const double hi = std::max(log_g, log_bp);
    const double log_q = ln_half + hi + std::log(std::exp(log_g - hi) + std::exp(log_bp - hi));
    const double log_l = std::lgamma(t + 1.0) + x - (t + 1.0) * std::log(x + theta);
    return std::exp(log_l + log_g - log_q);
  });
  return make_report("laplace martingale t=" + num(t) + " theta=" + num(theta), xs, 1.0 / theta, config.z_max);
}

McReport verify_martingale(const MartingaleKind& kind, double t, const std::string& check, const McConfig& config) {
  if (!(t > 0.0)) throw DomainError("verify_martingale: t must be positive");
  const std::string tag = kind.name() + " theta=" + num(kind.theta()) + " t=" + num(t);
  if (check == "laplace") {
    if (kind.kind() != MartingaleKind::Kind::gamma) {
      throw PreconditionError("verify_martingale: the laplace check needs the gamma kind");
    }
    return verify_laplace_martingale(t, kind.theta(), config);
  }
  if (check == "mean" || check == "bracket") {
    const double power = check == "mean" ? 1.0 : 2.0;
    const std::vector<double> xs = replicate<double>(config, [&](Rng& rng) {
      return std::exp(power * log_exp_martingale(kind, t, sample_kind(kind, t, config, rng)));
    });
    const double target = check == "mean" ? 1.0 : std::pow(pth_moment_base(kind, 2.0), t);
    return make_report(check + " " + tag, xs, target, config.z_max);
  }
  if (check == "increment") {
    const double s = 0.5 * t;
    const std::vector<double> xs = replicate<double>(config, [&](Rng& rng) {
      const double xs_ = sample_kind(kind, s, config, rng);
      const double xt = xs_ + sample_kind(kind, t - s, config, rng);
      const double ms = exp_martingale(kind, s, xs_);
      return (exp_martingale(kind, t, xt) - ms) * ms;
    });
    return make_report("increment " + tag, xs, 0.0, config.z_max);
  }
  if (check.rfind("poly:", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(check.substr(5));
    } catch (const std::exception&) {
      throw PreconditionError("verify_martingale: bad poly order in '" + check + "'");
    }
    const std::vector<double> xs = replicate<double>(config, [&](Rng& rng) {
      return poly_martingale(kind.kind(), n, t, sample_kind(kind, t, config, rng));
    });
    return make_report("poly n=" + std::to_string(n) + " " + kind.name() + " t=" + num(t), xs, 0.0, config.z_max);
  }
  throw PreconditionError("verify_martingale: unknown check '" + check + "' (mean, bracket, poly:N, increment, laplace)");
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw PreconditionError("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::fabs(i / na - j / nb));
  }
  return d;
}

double ks_critical_value(std::size_t n, std::size_t m, double alpha) {
  if (n == 0 || m == 0 || !(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("ks_critical_value: bad arguments");
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return std::sqrt(-std::log(alpha / 2.0) / 2.0) * std::sqrt((nn + mm) / (nn * mm));
}

}  // namespace gammatime
