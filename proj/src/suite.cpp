#include "gammatime/suite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <ostream>

#include "json.hpp"

#include "gammatime/analytic.hpp"
#include "gammatime/errors.hpp"
#include "gammatime/modular.hpp"
#include "gammatime/specfun.hpp"

namespace gammatime {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Series length for checks that do not pin N: the remainder mean bound
// 2^{-N} is then below 1e-15.
std::size_t short_terms() { return terms_for_bias(1, 1.0, 1e-15); }

McConfig mc_config(const std::string& name, const SuiteOptions& o, std::size_t reps, std::size_t terms) {
  McConfig c;
  c.reps = o.reps ? o.reps : reps;
  c.terms = terms;
  c.seeds = SeedPolicy{o.seed}.for_check(name);
  c.jobs = o.jobs;
  return c;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return g;
}

Integrand random_piecewise(Rng& rng, double len_lo, double len_hi, double v_lo, double v_hi) {
  const std::size_t cells = 1 + static_cast<std::size_t>(3.0 * rng.uniform());
  const double len = len_lo + (len_hi - len_lo) * rng.uniform();
  std::vector<double> cuts;
  for (std::size_t i = 1; i < cells; ++i) cuts.push_back(len * rng.uniform());
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> bps{0.0};
  for (double c : cuts) {
    if (c > bps.back()) bps.push_back(c);
  }
  bps.push_back(len);
  std::vector<double> vals(bps.size() - 1);
  for (double& v : vals) v = v_lo + (v_hi - v_lo) * rng.uniform();
  return Integrand::piecewise(bps, vals);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

using CheckFn = std::function<void(CheckResult&, const SuiteOptions&)>;

void check_e1_roundtrip(CheckResult& r, const SuiteOptions&) {
  double worst = 0.0;
  for (double x : log_grid(1e-8, 20.0, 100)) {
    worst = std::max(worst, std::fabs(exp_integral_e1(h_inverse(x)) - x) / x);
  }
  r.measurements.push_back(at_most("max |E1(H(x)) - x| / x", worst, 1e-10));
}

void check_jump_inequality(CheckResult& r, const SuiteOptions&) {
  const std::vector<double> grid = log_grid(1e-4, 20.0, 50);
  double worst = -kInf;
  for (double x : grid) {
    for (double y : grid) {
      worst = std::max(worst, h_inverse(x + y) / (std::exp(-x) * h_inverse(y)) - 1.0);
    }
  }
  r.measurements.push_back(at_most("max H(x+y) / (e^-x H(y)) - 1", worst, 1e-12));
}

void check_laplace_identity(CheckResult& r, const SuiteOptions& o) {
  const double thetas[] = {1.0, 0.5, 2.0};
  r.reports = verify_laplace(Integrand::indicator(0.0, 1.0), thetas, mc_config(r.name, o, 100000, o.terms));
}

void check_fourier_identity(CheckResult& r, const SuiteOptions& o) {
  const double thetas[] = {1.0};
  r.reports = verify_fourier(Integrand::indicator(0.0, 1.0), thetas, 0.0, mc_config(r.name, o, 100000, o.terms));
}

void check_moment_formula(CheckResult& r, const SuiteOptions& o) {
  const int ps[] = {1, 2, 3};
  r.reports = verify_moments(Integrand::indicator(0.0, 1.0), ps, mc_config(r.name, o, 100000, o.terms));
  const int p2[] = {2};
  McReport lin = verify_moments(Integrand::power(1.0, 1.0, 0.0, 1.0), p2,
                                mc_config(r.name + "/linear", o, 100000, o.terms))
                     .front();
  lin.label += " f=x";
  r.reports.push_back(lin);
}

void check_moment_bounds(CheckResult& r, const SuiteOptions& o) {
  Rng frng(SeedPolicy{o.seed}.for_check(r.name + "/integrands").master_seed);
  for (int k = 0; k < 5; ++k) {
    const Integrand f = random_piecewise(frng, 1.0, 3.0, 0.5, 1.5);
    const McConfig cfg = mc_config(r.name + "/" + std::to_string(k), o, 40000, short_terms());
    const HSeriesConfig series = cfg.series();
    const std::vector<double> xs = replicate<double>(
        cfg, [&](Rng& rng) { return sample_gamma_integral(f, series, RewardKind::none(), rng); });
    for (int p : {2, 3}) {
      std::vector<double> vals(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) vals[i] = std::pow(xs[i], p);
      const McReport est = make_report("", vals, 0.0);
      const PnormBounds b = pnorm_bounds(f, p);
      r.measurements.push_back(between("E(Gamma f)^" + std::to_string(p) + " f=" + f.spec(), est.estimate,
                                       b.lower - cfg.z_max * est.std_error, b.upper + cfg.z_max * est.std_error));
    }
  }
}

void check_truncation_decay(CheckResult& r, const SuiteOptions& o) {
  const std::size_t ns[] = {2, 4, 6, 8, 10};
  const std::size_t reps = o.reps ? o.reps : 20000;
  const RemainderProbe probe = remainder_decay_probe(Integrand::indicator(0.0, 1.0), 2, ns, reps,
                                                     SeedPolicy{o.seed}.for_check(r.name).master_seed);
  r.measurements.push_back(at_most("slope of ln E R_N^2", probe.slope.as_double(), -std::log(3.0) + 0.15));
}

void check_partition_error(CheckResult& r, const SuiteOptions&) {
  const Integrand f = Integrand::power(1.0, 1.0, 0.0, 1.0);
  for (double n : {1.0, 10.0, 100.0}) {
    const auto nn = static_cast<std::size_t>(n);
    r.measurements.push_back(within("left n=" + num(n), partition_error(f, nn, PartitionRule::left).value(),
                                    1.0 / (3.0 * n * n), 1e-12));
    r.measurements.push_back(within("average n=" + num(n), partition_error(f, nn, PartitionRule::average).value(),
                                    1.0 / (12.0 * n * n), 1e-12));
  }
}

void check_qv_modular(CheckResult& r, const SuiteOptions&) {
  for (double theta : {0.5, 1.0, 2.0}) {
    r.measurements.push_back(
        within("kernel theta=" + num(theta), qv_kernel_gaussian(theta), qv_kernel_direct(theta), 1e-8));
  }
}

void check_f_norm(CheckResult& r, const SuiteOptions& o) {
  BracketedEquation eq;
  eq.evaluator = [](double c) { return std::log1p(1.0 / c) - c; };
  eq.lo = 1e-3;
  eq.hi = 2.0;
  eq.tol_abs = 1e-15;
  const double root = solve_bracketed(eq);
  r.measurements.push_back(
      within("phi1 norm of 1[0,1]", f_norm(ModularKind::phi1(), Integrand::indicator(0.0, 1.0)).value(), root, 1e-9));
  Rng rng(SeedPolicy{o.seed}.for_check(r.name).master_seed);
  double worst = -kInf;
  for (int k = 0; k < 20; ++k) {
    const Integrand f = random_piecewise(rng, 0.5, 3.0, -2.0, 2.0);
    const Integrand g = random_piecewise(rng, 0.5, 3.0, -2.0, 2.0);
    const double nf = f_norm(ModularKind::phi1(), f).value();
    const double ng = f_norm(ModularKind::phi1(), g).value();
    const double nfg = f_norm(ModularKind::phi1(), f + g).value();
    worst = std::max(worst, nfg / (nf + ng) - 1.0);
  }
  r.measurements.push_back(at_most("max ||f+g|| / (||f|| + ||g||) - 1", worst, 1e-12));
}

void check_martingales(CheckResult& r, const SuiteOptions& o) {
  for (double t : {0.5, 2.0}) {
    const std::string at = " t=" + num(t);
    const McConfig gcfg = mc_config(r.name + "/gamma" + at, o, 100000, short_terms());
    const McConfig scfg = mc_config(r.name + "/symmetric" + at, o, 100000, short_terms());
    const std::vector<double> g =
        replicate<double>(gcfg, [&](Rng& rng) { return gamma_variate_hseries(t, gcfg.terms, rng); });
    const HSeriesConfig sseries = scfg.series();
    const std::vector<double> s =
        replicate<double>(scfg, [&](Rng& rng) { return sample_symmetric(t, sseries, rng); });
    auto report = [&](const std::string& label, const std::vector<double>& xs, auto fn, double target) {
      std::vector<double> v(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) v[i] = fn(xs[i]);
      r.reports.push_back(make_report(label + at, v, target, gcfg.z_max));
    };
    for (double theta : {-0.25, 0.5, 1.0}) {
      const MartingaleKind k = MartingaleKind::gamma(theta);
      report("E M gamma theta=" + num(theta), g, [&](double x) { return exp_martingale(k, t, x); }, 1.0);
    }
    for (double theta : {-0.3, 0.3}) {
      const MartingaleKind k = MartingaleKind::symmetric(theta);
      report("E M symmetric theta=" + num(theta), s, [&](double x) { return exp_martingale(k, t, x); }, 1.0);
    }
    const MartingaleKind half = MartingaleKind::gamma(0.5);
    report("E M^2 gamma theta=0.5", g, [&](double x) { return std::exp(2.0 * log_exp_martingale(half, t, x)); },
           std::pow(oblique_bracket_base(0.5), t));
    for (int n = 1; n <= 4; ++n) {
      report("E P_" + std::to_string(n), g,
             [&](double x) { return poly_martingale(MartingaleKind::Kind::gamma, n, t, x); }, 0.0);
      report("E P~_" + std::to_string(n), s,
             [&](double x) { return poly_martingale(MartingaleKind::Kind::symmetric, n, t, x); }, 0.0);
    }
    r.reports.push_back(
        verify_laplace_martingale(t, 2.0, mc_config(r.name + "/laplace" + at, o, 100000, short_terms())));
  }
}

void check_fixed_point(CheckResult& r, const SuiteOptions&) {
  const double c = shifted_symmetric_constant();
  r.measurements.push_back(within("|c|", std::fabs(c), 0.714556, 1e-5));
  r.measurements.push_back(at_most("|c - ln(1 - c^2)|", std::fabs(c - std::log1p(-c * c)), 1e-12));
}

void check_inverse_law(CheckResult& r, const SuiteOptions& o) {
  constexpr std::array<double, 2> ts = {0.1, 0.5};
  constexpr std::array<double, 3> xs = {0.5, 1.0, 2.0};
  const McConfig cfg = mc_config(r.name, o, 50000, short_terms());
  const HSeriesConfig series = cfg.series(2.0);
  const auto hits = replicate<std::array<double, 6>>(cfg, [&](Rng& rng) {
    const InverseFn inv = sample_inverse_path(series, 0.5, rng);
    std::array<double, 6> out{};
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double rt = inv(ts[i]).as_double();
      for (std::size_t j = 0; j < xs.size(); ++j) out[i * 3 + j] = rt > xs[j] ? 1.0 : 0.0;
    }
    return out;
  });
  std::vector<double> col(hits.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      for (std::size_t k = 0; k < hits.size(); ++k) col[k] = hits[k][i * 3 + j];
      r.reports.push_back(make_report("P(R_t > x) t=" + num(ts[i]) + " x=" + num(xs[j]), col,
                                      gamma_cdf(xs[j], ts[i]), cfg.z_max));
    }
  }
  r.measurements.push_back(within("finite(theta=0.5, t=10)", inverse_moment_finite(0.5, 10.0) ? 1 : 0, 1.0, 0.0));
  r.measurements.push_back(within("finite(theta=1, t=0.3)", inverse_moment_finite(1.0, 0.3) ? 1 : 0, 1.0, 0.0));
  r.measurements.push_back(within("finite(theta=1, t=0.5)", inverse_moment_finite(1.0, 0.5) ? 1 : 0, 0.0, 0.0));
}

void check_projection(CheckResult& r, const SuiteOptions& o) {
  r.reports.push_back(verify_projection(0.5, 1.0, mc_config(r.name, o, 100000, o.terms)));
}

void check_thorin_roundtrip(CheckResult& r, const SuiteOptions&) {
  const std::vector<double> grid = log_grid(0.01, 100.0, 20);
  const std::pair<const char*, Integrand> cases[] = {
      {"constant", Integrand::constant(2.0, 0.0, 1.0)},
      {"two-valued", Integrand::piecewise({0.0, 0.3, 1.0}, {2.0, 0.5})},
  };
  for (const auto& [label, f] : cases) {
    const ThorinDescriptor d = thorin_from_integrand(f);
    const Integrand back = integrand_from_thorin([&d](double y) { return d.cdf(y); });
    const ThorinDescriptor d2 = thorin_from_integrand(back);
    double worst = 0.0;
    for (double y : grid) worst = std::max(worst, std::fabs(d.k(y) - d2.k(y)));
    r.measurements.push_back(at_most(std::string("max |k - k'| ") + label, worst, 1e-9));
  }
}

void check_symmetric_identity(CheckResult& r, const SuiteOptions& o) {
  const McConfig a = mc_config(r.name + "/symmetric", o, 20000, short_terms());
  const McConfig b = mc_config(r.name + "/wiener", o, 20000, short_terms());
  const HSeriesConfig series = a.series();
  const auto xs = replicate<double>(a, [&](Rng& rng) { return sample_symmetric(1.0, series, rng); });
  const auto ys = replicate<double>(b, [&](Rng& rng) { return sample_subordinated_wiener(1.0, series, rng); });
  r.measurements.push_back(
      at_most("KS statistic", ks_statistic(xs, ys), ks_critical_value(xs.size(), ys.size(), 0.01)));
}

void check_tail_bound(CheckResult& r, const SuiteOptions& o) {
  const Integrand f = Integrand::constant(0.01, 0.0, 1.0);
  r.reports.push_back(verify_tail_bound(f, 1.0, 0.5, mc_config(r.name + "/skewed", o, 20000, short_terms())));
  r.reports.push_back(verify_tail_bound(f, 0.0, 0.5, mc_config(r.name + "/symmetric", o, 20000, short_terms())));
}

void check_fourier_skewed(CheckResult& r, const SuiteOptions& o) {
  const double thetas[] = {1.0};
  r.reports = verify_fourier(Integrand::indicator(0.0, 1.0), thetas, 1.0, mc_config(r.name, o, 100000, o.terms));
}

void check_martingale_increments(CheckResult& r, const SuiteOptions& o) {
  const McConfig cfg = mc_config(r.name, o, 50000, short_terms());
  r.reports.push_back(verify_martingale(MartingaleKind::gamma(0.5), 1.0, "increment", cfg));
  r.reports.push_back(verify_martingale(MartingaleKind::symmetric(0.3), 1.0, "increment", cfg));
}

struct Entry {
  const char* title;
  CheckFn fn;
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> r = {
      {"e1_roundtrip", {"E1/H roundtrip on [1e-8, 20]", check_e1_roundtrip}},
      {"jump_inequality", {"H(x+y) <= e^-x H(y)", check_jump_inequality}},
      {"laplace_identity", {"E exp(-theta Gamma_1) = (1+theta)^-1", check_laplace_identity}},
      {"fourier_identity", {"symmetric cf at theta=1", check_fourier_identity}},
      {"moment_formula", {"E(Gamma f)^p from Levy moments", check_moment_formula}},
      {"moment_bounds", {"Gamma-function bounds on E(Gamma f)^p", check_moment_bounds}},
      {"truncation_decay", {"geometric decay of E R_N^2", check_truncation_decay}},
      {"partition_error", {"partition error for f(x)=x", check_partition_error}},
      {"qv_modular", {"quadratic variation kernel, two forms", check_qv_modular}},
      {"f_norm", {"phi1 F-norm and triangle inequality", check_f_norm}},
      {"martingales", {"martingale means and brackets", check_martingales}},
      {"fixed_point", {"c = ln(1 - c^2)", check_fixed_point}},
      {"inverse_law", {"law of the inverse process", check_inverse_law}},
      {"projection", {"E[Gamma_a Gamma_c] = a + a c", check_projection}},
      {"thorin_roundtrip", {"integrand -> Thorin -> integrand", check_thorin_roundtrip}},
      {"symmetric_identity", {"symmetric Gamma vs subordinated Wiener", check_symmetric_identity}},
      {"tail_bound", {"Chebyshev-type tail bound", check_tail_bound}},
      {"fourier_skewed", {"skewed cf at theta=1, beta=1", check_fourier_skewed}},
      {"martingale_increments", {"orthogonal martingale increments", check_martingale_increments}},
  };
  return r;
}

nlohmann::json to_json(const McReport& m) {
  return {{"label", m.label},   {"estimate", m.estimate}, {"std_error", m.std_error}, {"reps", m.reps},
          {"target", m.target}, {"z", m.z},               {"one_sided", m.one_sided}, {"pass", m.pass}};
}

nlohmann::json to_json(const Measurement& m) {
  return {{"label", m.label}, {"value", m.value}, {"lower", m.lower}, {"upper", m.upper}, {"pass", m.pass}};
}

}  // namespace

Measurement within(std::string label, double value, double target, double tol) {
  return between(std::move(label), value, target - tol, target + tol);
}

Measurement at_most(std::string label, double value, double bound) {
  return between(std::move(label), value, -kInf, bound);
}

Measurement between(std::string label, double value, double lower, double upper) {
  return {std::move(label), value, lower, upper, value >= lower && value <= upper};
}

const std::vector<std::string>& default_manifest() {
  static const std::vector<std::string> m = {
      "e1_roundtrip",   "jump_inequality", "laplace_identity", "fourier_identity", "moment_formula",
      "moment_bounds",  "truncation_decay", "partition_error", "qv_modular",       "f_norm",
      "martingales",    "fixed_point",     "inverse_law",      "projection",       "thorin_roundtrip",
      "symmetric_identity"};
  return m;
}

std::vector<std::string> registered_checks() {
  std::vector<std::string> out = default_manifest();
  for (const auto& [name, entry] : registry()) {
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  }
  return out;
}

std::string check_title(const std::string& name) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw ConfigError("unknown check '" + name + "'");
  return it->second.title;
}

CheckResult run_check(const std::string& name, const SuiteOptions& options) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw ConfigError("unknown check '" + name + "'");
  CheckResult r;
  r.name = name;
  r.title = it->second.title;
  it->second.fn(r, options);
  r.pass = true;
  for (const auto& m : r.reports) r.pass = r.pass && m.pass;
  for (const auto& m : r.measurements) r.pass = r.pass && m.pass;
  return r;
}

std::string report_line(const CheckResult& result) {
  nlohmann::json j;
  j["check"] = result.name;
  j["title"] = result.title;
  j["pass"] = result.pass;
  j["reports"] = nlohmann::json::array();
  for (const auto& m : result.reports) j["reports"].push_back(to_json(m));
  j["measurements"] = nlohmann::json::array();
  for (const auto& m : result.measurements) j["measurements"].push_back(to_json(m));
  return j.dump();
}

SuiteResult run_suite(std::span<const std::string> manifest, const SuiteOptions& options, std::ostream* sink) {
  for (const auto& name : manifest) check_title(name);
  SuiteResult out;
  for (const auto& name : manifest) {
    CheckResult r = run_check(name, options);
    if (sink) *sink << report_line(r) << '\n' << std::flush;
    out.pass = out.pass && r.pass;
    out.checks.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> load_manifest(const std::string& suite) {
  if (suite == "default") return default_manifest();
  std::ifstream in(suite);
  if (!in) throw ConfigError("cannot read suite file '" + suite + "'");
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    names.push_back(line.substr(b, e - b + 1));
  }
  return names;
}

}  // namespace gammatime
