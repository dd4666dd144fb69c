#include "gammatime/gamma_sim.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "gammatime/errors.hpp"
#include "gammatime/parallel.hpp"
#include "gammatime/specfun.hpp"

namespace gammatime {

namespace {

// H at a level x = S p(U); a level that underflowed to 0 is clamped so the
// jump stays finite (it is ~708 instead of +inf).
double jump_size(double x) { return h_inverse(std::max(x, DBL_MIN)); }

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw PreconditionError("bad number '" + text + "' for " + what);
  return v;
}

// Visits (U_n, H_n) for the configured series.
template <class Visit>
void for_each_term(const HSeriesConfig& config, Rng& rng, Visit&& visit) {
  const BaseDensity& d = config.density;
  if (d.kind() == BaseDensity::Kind::uniform01) {
    const std::size_t blocks = config.blocks();
    for (std::size_t k = 0; k < blocks; ++k) {
      double s = 0.0;
      for (std::size_t n = 0; n < config.terms; ++n) {
        s += rng.exponential();
        const double u = static_cast<double>(k) + rng.uniform();
        visit(u, s);
      }
    }
    return;
  }
  double s = 0.0;
  for (std::size_t n = 0; n < config.terms; ++n) {
    s += rng.exponential();
    const double u = d.sample(rng);
    visit(u, s * d.pdf(u));
  }
}

}  // namespace

BaseDensity BaseDensity::pareto(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw PreconditionError("pareto base density needs p > 1");
  return BaseDensity(Kind::pareto, p);
}

BaseDensity BaseDensity::parse(const std::string& text) {
  if (text == "uniform" || text == "uniform01") return uniform01();
  if (text == "exp" || text == "exponential") return exponential();
  if (text.rfind("pareto:", 0) == 0) return pareto(parse_number(text.substr(7), "pareto shape"));
  throw PreconditionError("unknown base density '" + text + "' (uniform, exp, pareto:P)");
}

std::string BaseDensity::str() const {
  switch (kind_) {
    case Kind::uniform01: return "uniform";
    case Kind::exponential: return "exp";
    default: return "pareto:" + format_double(p_);
  }
}

double BaseDensity::pdf(double u) const {
  if (u < 0.0) return 0.0;
  switch (kind_) {
    case Kind::uniform01: return 1.0;
    case Kind::exponential: return std::exp(-u);
    default: return (p_ - 1.0) * std::exp(-p_ * std::log1p(u));
  }
}

double BaseDensity::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::uniform01: return rng.uniform();
    case Kind::exponential: return rng.exponential();
    default: return rng.lomax(p_);
  }
}

void HSeriesConfig::validate() const {
  if (terms < 1) throw PreconditionError("HSeriesConfig: terms must be >= 1");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw PreconditionError("HSeriesConfig: horizon must be finite and > 0");
}

std::size_t HSeriesConfig::blocks() const {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(horizon)));
}

RewardKind RewardKind::bernoulli(double beta) {
  if (!(beta >= -1.0 && beta <= 1.0)) throw PreconditionError("bernoulli reward needs beta in [-1, 1]");
  return RewardKind(Kind::bernoulli, beta, {});
}

RewardKind RewardKind::quantile(std::function<double(double)> q) {
  if (!q) throw PreconditionError("quantile reward needs an evaluator");
  return RewardKind(Kind::quantile, 0.0, std::move(q));
}

RewardKind RewardKind::parse(const std::string& text) {
  if (text == "none") return none();
  if (text.rfind("bernoulli:", 0) == 0) return bernoulli(parse_number(text.substr(10), "bernoulli beta"));
  throw PreconditionError("unknown reward '" + text + "' (none, bernoulli:B)");
}

std::string RewardKind::str() const {
  switch (kind_) {
    case Kind::none: return "none";
    case Kind::bernoulli: return "bernoulli:" + format_double(beta_);
    default: return "quantile";
  }
}

double RewardKind::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::none: return 1.0;
    case Kind::bernoulli: return rng.uniform() < 0.5 * (1.0 + beta_) ? 1.0 : -1.0;
    default: return q_(rng.uniform());
  }
}

std::vector<double> sample_arrivals(std::size_t n, Rng& rng) {
  if (n < 1) throw PreconditionError("sample_arrivals: n must be >= 1");
  std::vector<double> s(n);
  double acc = 0.0;
  for (auto& v : s) {
    acc += rng.exponential();
    v = acc;
  }
  return s;
}

std::vector<double> sample_arrivals(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_arrivals(n, rng);
}

JumpPath sample_gamma_path(const HSeriesConfig& config) {
  Rng rng(config.seed);
  return sample_gamma_path(config, rng);
}

JumpPath sample_gamma_path(const HSeriesConfig& config, Rng& rng) {
  config.validate();
  std::vector<double> times;
  std::vector<double> heights;
  for_each_term(config, rng, [&](double u, double level) {
    times.push_back(u);
    heights.push_back(jump_size(level));
  });
  return JumpPath::from_unsorted(std::move(times), std::move(heights));
}

double sample_gamma_integral(const Integrand& f, const HSeriesConfig& config, const RewardKind& reward) {
  Rng rng(config.seed);
  return sample_gamma_integral(f, config, reward, rng);
}

double sample_gamma_integral(const Integrand& f, const HSeriesConfig& config, const RewardKind& reward, Rng& rng) {
  config.validate();
  HSeriesConfig cfg = config;
  if (cfg.density.kind() == BaseDensity::Kind::uniform01) {
    const double hi = f.support_hi();
    if (std::isinf(hi)) {
      throw PreconditionError("sample_gamma_integral: uniform blocks need an integrand with bounded support");
    }
    cfg.horizon = std::max(cfg.horizon, hi);
  }
  double sum = 0.0;
  for_each_term(cfg, rng, [&](double u, double level) {
    const double k = reward.sample(rng);
    const double fu = f(u);
    if (fu != 0.0 && k != 0.0) sum += k * jump_size(level) * fu;
  });
  return sum;
}

double gamma_variate_hseries(double s, std::size_t terms, Rng& rng) {
  if (!(s > 0.0)) throw DomainError("gamma_variate_hseries: shape must be positive");
  const std::size_t m = terms * static_cast<std::size_t>(std::ceil(s));
  double arrival = 0.0;
  double sum = 0.0;
  for (std::size_t n = 0; n < m; ++n) {
    arrival += rng.exponential();
    sum += jump_size(arrival / s);
  }
  return sum;
}

double sample_symmetric(double t, const HSeriesConfig& config) {
  Rng rng(config.seed);
  return sample_symmetric(t, config, rng);
}

double sample_symmetric(double t, const HSeriesConfig& config, Rng& rng) {
  if (!(t > 0.0)) throw DomainError("sample_symmetric: t must be positive");
  config.validate();
  const double a = gamma_variate_hseries(0.5 * t, config.terms, rng);
  const double b = gamma_variate_hseries(0.5 * t, config.terms, rng);
  return a - b;
}

double sample_subordinated_wiener(double t, const HSeriesConfig& config) {
  Rng rng(config.seed);
  return sample_subordinated_wiener(t, config, rng);
}

double sample_subordinated_wiener(double t, const HSeriesConfig& config, Rng& rng) {
  if (!(t > 0.0)) throw DomainError("sample_subordinated_wiener: t must be positive");
  config.validate();
  const double g = gamma_variate_hseries(0.5 * t, config.terms, rng);
  return std::sqrt(2.0 * g) * rng.normal();
}

InverseFn sample_inverse_path(const HSeriesConfig& config, double v_max) {
  Rng rng(config.seed);
  return sample_inverse_path(config, v_max, rng);
}

InverseFn sample_inverse_path(const HSeriesConfig& config, double v_max, Rng& rng) {
  if (!(v_max > 0.0)) throw PreconditionError("sample_inverse_path: v_max must be positive");
  return rcll_inverse(sample_gamma_path(config, rng));
}

PartitionRule parse_partition_rule(const std::string& text) {
  if (text == "left") return PartitionRule::left;
  if (text == "average") return PartitionRule::average;
  throw PreconditionError("unknown partition rule '" + text + "' (left, average)");
}

std::vector<double> partition_values(const Integrand& f, std::size_t n, PartitionRule rule) {
  if (n < 1) throw PreconditionError("partition: n must be >= 1");
  if (f.support_hi() > 1.0 && !f.is_zero()) throw PreconditionError("partition: f must vanish outside [0, 1]");
  std::vector<double> a(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = static_cast<double>(j) / n;
    const double hi = static_cast<double>(j + 1) / n;
    if (rule == PartitionRule::left) {
      a[j] = f(lo);
    } else {
      const ExtReal m = f.power_integral(1, lo, hi);
      if (!m.is_finite()) throw DomainError("partition: f is not integrable on a cell");
      a[j] = m.value() * n;
    }
  }
  return a;
}

double sample_partition_path(const Integrand& f, std::size_t n, PartitionRule rule, std::uint64_t seed) {
  Rng rng(seed);
  return sample_partition_path(f, n, rule, rng);
}

double sample_partition_path(const Integrand& f, std::size_t n, PartitionRule rule, Rng& rng) {
  const std::vector<double> a = partition_values(f, n, rule);
  const double shape = 1.0 / static_cast<double>(n);
  double sum = 0.0;
  for (double aj : a) {
    const double g = rng.gamma(shape);
    sum += aj * g;
  }
  return sum;
}

ExtReal partition_error(const Integrand& f, std::size_t n, PartitionRule rule) {
  const std::vector<double> a = partition_values(f, n, rule);
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = static_cast<double>(j) / n;
    const double hi = static_cast<double>(j + 1) / n;
    if (f.is_piecewise()) {
      // Exact: f is constant between the breakpoints that fall in the cell.
      std::vector<double> cuts{lo, hi};
      for (double b : f.as_piecewise().breakpoints) {
        if (b > lo && b < hi) cuts.push_back(b);
      }
      std::sort(cuts.begin(), cuts.end());
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double d = f(0.5 * (cuts[i] + cuts[i + 1])) - a[j];
        total += d * d * (cuts[i + 1] - cuts[i]);
      }
    } else {
      const ExtReal sq = f.abs_power_integral(2.0, lo, hi);
      if (!sq.is_finite()) return ExtReal::infinity();
      const double lin = f.power_integral(1, lo, hi).value();
      total += std::max(0.0, sq.value() - 2.0 * a[j] * lin + a[j] * a[j] * (hi - lo));
    }
  }
  return total;
}

RemainderProbe remainder_decay_probe(const Integrand& f, int p, std::span<const std::size_t> n_list,
                                     std::size_t reps, std::uint64_t seed) {
  if (p != 1 && (p < 2 || p % 2 != 0)) {
    throw PreconditionError("remainder_decay_probe: p must be even (the geometric bound assumes even p), or 1 for the mean");
  }
  if (n_list.size() < 2) throw PreconditionError("remainder_decay_probe: need at least two values of N");
  if (reps < 1) throw PreconditionError("remainder_decay_probe: reps must be >= 1");
  if (!f.is_nonnegative()) throw PreconditionError("remainder_decay_probe: f must be nonnegative");
  if (f.support_hi() > 1.0) throw PreconditionError("remainder_decay_probe: f must vanish outside [0, 1]");

  constexpr std::size_t kInnerTerms = 64;  // H(S'_N + S_n) <= e^{-S_n} H(S'_N)
  const std::size_t n_max = *std::max_element(n_list.begin(), n_list.end());
  std::vector<std::vector<double>> powers(n_list.size(), std::vector<double>(reps));
  for (std::size_t r = 0; r < reps; ++r) {
    Rng rng(stream_seed(seed, r));
    // Shared S'_1 <= S'_2 <= ... and inner series across N (common random numbers).
    std::vector<double> shift(n_max + 1, 0.0);
    for (std::size_t k = 1; k <= n_max; ++k) shift[k] = shift[k - 1] + rng.exponential();
    std::vector<double> s(kInnerTerms);
    std::vector<double> fu(kInnerTerms);
    double acc = 0.0;
    for (std::size_t n = 0; n < kInnerTerms; ++n) {
      acc += rng.exponential();
      s[n] = acc;
      fu[n] = f(rng.uniform());
    }
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      double rem = 0.0;
      for (std::size_t n = 0; n < kInnerTerms; ++n) {
        if (fu[n] != 0.0) rem += jump_size(shift[n_list[i]] + s[n]) * fu[n];
      }
      powers[i][r] = std::pow(rem, p);
    }
  }

  RemainderProbe out;
  bool degenerate = false;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const double mean = compensated_sum(powers[i]) / static_cast<double>(reps);
    out.n_values.push_back(static_cast<double>(n_list[i]));
    if (!(mean > 0.0)) {
      degenerate = true;
      out.log_moments.push_back(-std::numeric_limits<double>::infinity());
    } else {
      out.log_moments.push_back(std::log(mean));
    }
  }
  if (degenerate) {
    out.slope = ExtReal::neg_infinity();
    return out;
  }
  const double k = static_cast<double>(n_list.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    mx += out.n_values[i];
    my += out.log_moments[i];
  }
  mx /= k;
  my /= k;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    sxy += (out.n_values[i] - mx) * (out.log_moments[i] - my);
    sxx += (out.n_values[i] - mx) * (out.n_values[i] - mx);
  }
  if (sxx == 0.0) throw PreconditionError("remainder_decay_probe: N values must not all coincide");
  out.slope = sxy / sxx;
  return out;
}

std::pair<double, double> truncation_deficit(const Integrand& f, const HSeriesConfig& config, std::size_t reps) {
  if (reps < 2) throw PreconditionError("truncation_deficit: reps must be >= 2");
  const ExtReal target = f.power_integral(1);
  if (!target.is_finite()) throw DomainError("truncation_deficit: lambda f is infinite");
  std::vector<double> xs(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    HSeriesConfig cfg = config;
    cfg.seed = stream_seed(config.seed, r);
    xs[r] = sample_gamma_integral(f, cfg, RewardKind::none());
  }
  const double mean = compensated_sum(xs) / static_cast<double>(reps);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / static_cast<double>(reps - 1) / static_cast<double>(reps));
  return {target.value() - mean, se};
}

std::size_t terms_for_bias(int p, double scale, double target) {
  if (p < 1 || !(scale > 0.0) || !(target > 0.0)) throw PreconditionError("terms_for_bias: bad arguments");
  if (scale <= target) return 1;
  return static_cast<std::size_t>(std::ceil(std::log(scale / target) / std::log(p + 1.0)));
}

}  // namespace gammatime
