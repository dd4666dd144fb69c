#include "gammatime/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gammatime/analytic.hpp"
#include "gammatime/errors.hpp"
#include "gammatime/gamma_sim.hpp"
#include "gammatime/harness.hpp"
#include "gammatime/jumpcalc.hpp"
#include "gammatime/martingales.hpp"
#include "gammatime/modular.hpp"
#include "gammatime/specfun.hpp"
#include "gammatime/suite.hpp"

namespace gammatime::cli {

namespace {

// Bad flag values found after CLI11 accepted the syntax.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt15(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Integrand parse_f(const std::string& spec) {
  try {
    return Integrand::parse(spec);
  } catch (const PreconditionError& e) {
    throw UsageError(std::string("--f: ") + e.what());
  }
}

template <class T, class Parse>
T parse_flag(const std::string& flag, const std::string& text, Parse parse) {
  try {
    return parse(text);
  } catch (const PreconditionError& e) {
    throw UsageError(flag + ": " + e.what());
  } catch (const DomainError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

// Resolved options of a subcommand as "key=value" lines, defaults included.
std::vector<std::string> resolved_config(const CLI::App* sub, const std::string& seed_source) {
  std::vector<std::string> lines{"gammatime " + sub->get_name()};
  for (const CLI::Option* o : sub->get_options()) {
    const std::string name = o->get_single_name();
    if (name.rfind("help", 0) == 0 || name == "out") continue;
    std::string value;
    if (o->get_type_size() == 0) {
      value = o->count() > 0 ? "true" : "false";
    } else if (o->count() > 0) {
      for (const auto& r : o->results()) value += (value.empty() ? "" : ",") + r;
    } else {
      value = o->get_default_str();
    }
    lines.push_back(name + "=" + value);
  }
  if (!seed_source.empty()) lines.push_back("seed_source=" + seed_source);
  return lines;
}

void write_header(std::ostream& out, const std::vector<std::string>& lines) {
  for (const auto& l : lines) out << "# " << l << '\n';
}

// Output to --out when given, else to `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open output file '" + path + "'");
      os_ = file_.get();
    }
  }
  std::ostream& get() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

// Applies a flat key=value config file: each key becomes --key=value unless
// the flag is already on the command line.  A seed from the file yields to
// GAMMATIME_SEED.
std::vector<std::string> apply_config(std::vector<std::string> args, std::vector<std::string>& injected) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  auto given = [&](const std::string& key) {
    for (const auto& a : args) {
      if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
    }
    return false;
  };
  std::size_t at = 0;
  while (at < args.size() && args[at].rfind("-", 0) == 0) ++at;
  at = std::min(at + 1, args.size());
  std::vector<std::string> extra;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#' || line[b] == ';' || line[b] == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config file: expected key=value, got '" + line + "'");
    auto trim = [](std::string s) {
      const auto lo = s.find_first_not_of(" \t\r\"");
      const auto hi = s.find_last_not_of(" \t\r\"");
      return lo == std::string::npos ? std::string() : s.substr(lo, hi - lo + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (given(key)) continue;
    if (key == "seed" && std::getenv("GAMMATIME_SEED")) continue;
    extra.push_back("--" + key + "=" + value);
    injected.push_back(key);
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), extra.begin(), extra.end());
  return args;
}

bool has_flag(const std::vector<std::string>& args, const std::string& key) {
  for (const auto& a : args) {
    if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
  }
  return false;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gamma process laboratory: series simulation, transforms, modulars, martingales"};
  app.name("gammatime");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "All subcommands and their flags");
  std::string config_path;
  app.add_option("--config", config_path, "Flat key=value file; explicit flags win");

  // e1
  double e1_v = 1.0;
  auto* e1 = app.add_subcommand("e1", "E1(v) = int_v^inf e^-x/x dx");
  e1->add_option("--v", e1_v, "Argument v > 0")->required();

  // invert
  double inv_x = 1.0;
  double inv_tol = 1e-12;
  auto* invert = app.add_subcommand("invert", "H(x), the inverse of E1");
  invert->add_option("--x", inv_x, "Argument x > 0")->required();
  invert->add_option("--tol-rel", inv_tol, "Relative residual tolerance")->capture_default_str();

  // simulate
  std::string sim_kind;
  std::size_t sim_terms = 200;
  std::string sim_density = "uniform";
  std::string sim_reward = "none";
  std::uint64_t sim_seed = 42;
  std::size_t sim_reps = 0;
  double sim_t = 1.0;
  std::string sim_f;
  std::size_t sim_n = 10;
  std::string sim_rule = "left";
  double sim_v = 1.0;
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "Sample paths or replicate values from the series");
  simulate->add_option("--kind", sim_kind, "gamma|symmetric|compound|inverse|partition|subwiener")
      ->required()
      ->check(CLI::IsMember({"gamma", "symmetric", "compound", "inverse", "partition", "subwiener"}));
  simulate->add_option("--terms", sim_terms, "Series length N (per unit block)")->capture_default_str();
  simulate->add_option("--density", sim_density, "uniform|exp|pareto:P")->capture_default_str();
  simulate->add_option("--reward", sim_reward, "none|bernoulli:B")->capture_default_str();
  simulate->add_option("--seed", sim_seed, "Master seed")->capture_default_str()->envname("GAMMATIME_SEED");
  simulate->add_option("--reps", sim_reps, "Replicates; 0 writes one path (gamma, compound, inverse)")
      ->capture_default_str();
  simulate->add_option("--t", sim_t, "Time horizon, or t of the symmetric/subordinated variable")->capture_default_str();
  simulate->add_option("--f", sim_f, "Integrand for gamma/compound/partition replicates");
  simulate->add_option("--n", sim_n, "Partition cells")->capture_default_str();
  simulate->add_option("--rule", sim_rule, "left|average")->capture_default_str();
  simulate->add_option("--v", sim_v, "Level v of R_v for inverse replicates")->capture_default_str();
  simulate->add_option("--out", sim_out, "Output CSV (default stdout)");

  // norm
  std::string norm_f;
  std::string norm_phi = "phi1";
  std::string norm_what = "norm";
  double norm_beta = 1.0;
  auto* norm = app.add_subcommand("norm", "F-norm, modular value or integrability of f");
  norm->add_option("--f", norm_f, "Integrand spec")->required();
  norm->add_option("--phi", norm_phi, "phi0_min|phi0_ratio|phi0_exp|phi0_arctan|phi1|phi2|phi1_squared")
      ->capture_default_str();
  norm->add_option("--what", norm_what, "norm|modular|integrable|qv")
      ->capture_default_str()
      ->check(CLI::IsMember({"norm", "modular", "integrable", "qv"}));
  norm->add_option("--beta", norm_beta, "Skewness for --what integrable")->capture_default_str();

  // moments
  std::string mom_f;
  int mom_p = 2;
  bool mom_bounds = false;
  auto* moments = app.add_subcommand("moments", "E(Gamma f)^p from the Levy moments of f");
  moments->add_option("--f", mom_f, "Integrand spec")->required();
  moments->add_option("--p", mom_p, "Order 1..20")->capture_default_str()->check(CLI::Range(1, 20));
  moments->add_flag("--bounds", mom_bounds, "Also print the Gamma-function bounds (f >= 0, finite support)");

  // transform
  std::string tr_f;
  std::vector<double> tr_theta{1.0};
  double tr_beta = 0.0;
  bool tr_laplace = false;
  std::string tr_out;
  auto* transform = app.add_subcommand("transform", "Characteristic function or Laplace transform of Gamma f");
  transform->add_option("--f", tr_f, "Integrand spec")->required();
  transform->add_option("--theta", tr_theta, "Comma-separated theta grid")->delimiter(',')->capture_default_str();
  transform->add_option("--beta", tr_beta, "Skewness in [-1, 1]")->capture_default_str();
  transform->add_flag("--laplace", tr_laplace, "Laplace transform instead (f >= 0, theta >= 0)");
  transform->add_option("--out", tr_out, "Output CSV (default stdout)");

  // thorin
  std::string th_f;
  double th_ymin = 0.01;
  double th_ymax = 100.0;
  std::size_t th_points = 50;
  std::string th_out;
  auto* thorin = app.add_subcommand("thorin", "k(y) table of the Thorin measure of f");
  thorin->add_option("--from-f", th_f, "Integrand spec, f >= 0 on [0, 1]")->required();
  thorin->add_option("--y-min", th_ymin, "Smallest y")->capture_default_str();
  thorin->add_option("--y-max", th_ymax, "Largest y")->capture_default_str();
  thorin->add_option("--points", th_points, "Log-spaced grid size")->capture_default_str()->check(CLI::Range(2, 100000));
  thorin->add_option("--out", th_out, "Output CSV (default stdout)");

  // martingale
  std::string mg_kind = "gamma";
  double mg_theta = 0.5;
  double mg_t = 1.0;
  std::string mg_check = "mean";
  std::size_t mg_reps = 100000;
  std::uint64_t mg_seed = 42;
  std::size_t mg_terms = 50;
  unsigned mg_jobs = 1;
  auto* martingale = app.add_subcommand("martingale", "Monte Carlo check of a martingale identity");
  martingale->add_option("--kind", mg_kind, "gamma|symmetric")->capture_default_str();
  martingale->add_option("--theta", mg_theta, "Parameter")->capture_default_str();
  martingale->add_option("--t", mg_t, "Time")->capture_default_str();
  martingale->add_option("--check", mg_check, "mean|bracket|poly:N|increment|laplace")->capture_default_str();
  martingale->add_option("--reps", mg_reps, "Replicates")->capture_default_str()->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  martingale->add_option("--seed", mg_seed, "Master seed")->capture_default_str()->envname("GAMMATIME_SEED");
  martingale->add_option("--terms", mg_terms, "Series length per unit time")->capture_default_str();
  martingale->add_option("--jobs", mg_jobs, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));

  // verify
  std::string vf_suite = "default";
  std::uint64_t vf_seed = 42;
  std::size_t vf_reps = 0;
  unsigned vf_jobs = 1;
  std::size_t vf_terms = 200;
  std::string vf_out;
  bool vf_list = false;
  auto* verify = app.add_subcommand("verify", "Run a suite of checks and write a JSONL report");
  verify->add_option("--suite", vf_suite, "default, or a file with one check name per line")->capture_default_str();
  verify->add_option("--seed", vf_seed, "Master seed")->capture_default_str()->envname("GAMMATIME_SEED");
  verify->add_option("--reps", vf_reps, "Replicates for every Monte Carlo check (0: per-check defaults)")
      ->capture_default_str();
  verify->add_option("--jobs", vf_jobs, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));
  verify->add_option("--terms", vf_terms, "Series length where a check pins N")->capture_default_str();
  verify->add_option("--out", vf_out, "Report file (default stdout)");
  verify->add_flag("--list", vf_list, "List the registered checks and exit");

  std::string seed_from = "default";
  try {
    std::vector<std::string> injected;
    const std::vector<std::string> args = apply_config(raw_args, injected);
    if (has_flag(raw_args, "seed")) {
      seed_from = "flag";
    } else if (std::getenv("GAMMATIME_SEED")) {
      seed_from = "GAMMATIME_SEED";
    } else if (std::find(injected.begin(), injected.end(), "seed") != injected.end()) {
      seed_from = "config";
    }
    if (args.empty()) {
      err << app.help();
      return kExitUsage;
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "gammatime: " << e.what() << "\n";
    err << "run 'gammatime --help' for usage\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "gammatime: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (e1->parsed()) {
      out << fmt15(exp_integral_e1(e1_v)) << "\n";
      return kExitOk;
    }
    if (invert->parsed()) {
      InversionOptions opts;
      opts.tol_rel = inv_tol;
      out << fmt15(h_inverse(inv_x, opts)) << "\n";
      return kExitOk;
    }
    if (simulate->parsed()) {
      HSeriesConfig cfg;
      cfg.terms = sim_terms;
      cfg.density = parse_flag<BaseDensity>("--density", sim_density, BaseDensity::parse);
      cfg.horizon = sim_t;
      const RewardKind reward = parse_flag<RewardKind>("--reward", sim_reward, RewardKind::parse);
      const PartitionRule rule = parse_flag<PartitionRule>("--rule", sim_rule, parse_partition_rule);
      try {
        cfg.validate();
      } catch (const PreconditionError& e) {
        throw UsageError(e.what());
      }
      if (!(sim_t > 0.0)) throw UsageError("--t must be positive");
      const bool path_kind = sim_kind == "gamma" || sim_kind == "compound" || sim_kind == "inverse";
      const std::size_t reps = (sim_reps == 0 && !path_kind) ? 1 : sim_reps;
      Integrand f = Integrand::indicator(0.0, sim_t);
      if (sim_kind == "partition") f = Integrand::power(1.0, 1.0, 0.0, 1.0);
      if (!sim_f.empty()) f = parse_f(sim_f);

      Sink sink(sim_out, out);
      std::ostream& os = sink.get();
      write_header(os, resolved_config(simulate, seed_from));
      if (reps == 0) {
        Rng rng(stream_seed(sim_seed, 0));
        JumpPath path = sample_gamma_path(cfg, rng);
        if (sim_kind == "compound") {
          std::vector<double> k(path.size());
          for (double& x : k) x = reward.sample(rng);
          path = compound(path, k);
        } else if (sim_kind == "inverse") {
          path = rcll_inverse(path).as_path();
        }
        write_path_csv(os, path);
        return kExitOk;
      }
      os << "rep,value\n";
      for (std::size_t i = 0; i < reps; ++i) {
        Rng rng(stream_seed(sim_seed, i));
        double v = 0.0;
        if (sim_kind == "gamma") {
          v = sim_f.empty() ? sample_gamma_path(cfg, rng).amass(sim_t)
                            : sample_gamma_integral(f, cfg, RewardKind::none(), rng);
        } else if (sim_kind == "compound") {
          v = sample_gamma_integral(f, cfg, reward, rng);
        } else if (sim_kind == "symmetric") {
          v = sample_symmetric(sim_t, cfg, rng);
        } else if (sim_kind == "subwiener") {
          v = sample_subordinated_wiener(sim_t, cfg, rng);
        } else if (sim_kind == "inverse") {
          v = sample_inverse_path(cfg, sim_v, rng)(sim_v).as_double();
        } else {
          v = sample_partition_path(f, sim_n, rule, rng);
        }
        os << i << ',' << fmt17(v) << '\n';
      }
      return kExitOk;
    }
    if (norm->parsed()) {
      const Integrand f = parse_f(norm_f);
      const ModularKind phi = parse_flag<ModularKind>("--phi", norm_phi, ModularKind::parse);
      if (norm_what == "norm") {
        out << fmt15(f_norm(phi, f).as_double()) << "\n";
      } else if (norm_what == "modular") {
        out << fmt15(modular_value(phi, f).as_double()) << "\n";
      } else if (norm_what == "qv") {
        out << fmt15(qv_modular(f).as_double()) << "\n";
      } else {
        out << to_string(gamma_integrable(f, norm_beta)) << "\n";
      }
      return kExitOk;
    }
    if (moments->parsed()) {
      const Integrand f = parse_f(mom_f);
      const std::vector<double> m = levy_moments(f, mom_p);
      out << fmt15(moments_from_levy(m, mom_p)) << "\n";
      if (mom_bounds) {
        const PnormBounds b = pnorm_bounds(f, mom_p);
        out << "lower " << fmt15(b.lower) << "\n";
        out << "upper " << fmt15(b.upper) << "\n";
        out << "jensen_upper " << fmt15(b.jensen_upper) << "\n";
      }
      return kExitOk;
    }
    if (transform->parsed()) {
      const Integrand f = parse_f(tr_f);
      if (!(tr_beta >= -1.0 && tr_beta <= 1.0)) throw UsageError("--beta must lie in [-1, 1]");
      Sink sink(tr_out, out);
      std::ostream& os = sink.get();
      write_header(os, resolved_config(transform, ""));
      if (tr_laplace) {
        os << "theta,laplace\n";
        for (double th : tr_theta) os << fmt15(th) << ',' << fmt15(laplace_gamma(f, th)) << '\n';
      } else {
        os << "theta,re,im\n";
        for (double th : tr_theta) {
          const auto z = fourier_gamma(f, th, tr_beta);
          os << fmt15(th) << ',' << fmt15(z.real()) << ',' << fmt15(z.imag()) << '\n';
        }
      }
      return kExitOk;
    }
    if (thorin->parsed()) {
      const Integrand f = parse_f(th_f);
      if (!(th_ymin > 0.0) || !(th_ymax > th_ymin)) throw UsageError("need 0 < --y-min < --y-max");
      const ThorinDescriptor d = thorin_from_integrand(f);
      Sink sink(th_out, out);
      std::ostream& os = sink.get();
      write_header(os, resolved_config(thorin, ""));
      os << "y,k\n";
      for (std::size_t i = 0; i < th_points; ++i) {
        const double y = th_ymin * std::pow(th_ymax / th_ymin, static_cast<double>(i) / (th_points - 1));
        os << fmt15(y) << ',' << fmt15(d.k(y)) << '\n';
      }
      return kExitOk;
    }
    if (martingale->parsed()) {
      const MartingaleKind kind = parse_flag<MartingaleKind>(
          "--kind", mg_kind, [&](const std::string& s) { return MartingaleKind::parse(s, mg_theta); });
      McConfig cfg;
      cfg.reps = mg_reps;
      cfg.terms = mg_terms;
      cfg.seeds = SeedPolicy{mg_seed};
      cfg.jobs = mg_jobs;
      const McReport r = verify_martingale(kind, mg_t, mg_check, cfg);
      nlohmann::json j = {{"check", mg_check}, {"label", r.label},   {"estimate", r.estimate},
                          {"std_error", r.std_error}, {"reps", r.reps}, {"target", r.target},
                          {"z", r.z},             {"pass", r.pass},     {"seed", mg_seed},
                          {"seed_source", seed_from}};
      out << j.dump() << "\n";
      return r.pass ? kExitOk : kExitCheckFailed;
    }
    if (verify->parsed()) {
      if (vf_list) {
        for (const auto& name : registered_checks()) out << name << "  " << check_title(name) << "\n";
        return kExitOk;
      }
      const std::vector<std::string> manifest = load_manifest(vf_suite);
      for (const auto& name : manifest) check_title(name);
      SuiteOptions opts;
      opts.seed = vf_seed;
      opts.jobs = vf_jobs;
      opts.reps = vf_reps;
      opts.terms = vf_terms;
      Sink sink(vf_out, out);
      std::ostream& os = sink.get();
      nlohmann::json header;
      header["config"]["command"] = "gammatime verify";
      header["config"]["suite"] = vf_suite;
      header["config"]["checks"] = manifest;
      header["config"]["seed"] = vf_seed;
      header["config"]["seed_source"] = seed_from;
      header["config"]["reps"] = vf_reps;
      header["config"]["terms"] = vf_terms;
      os << header.dump() << "\n";
      const SuiteResult res = run_suite(manifest, opts, &os);
      if (!vf_out.empty()) {
        for (const auto& c : res.checks) err << (c.pass ? "PASS " : "FAIL ") << c.name << "\n";
      }
      return res.pass ? kExitOk : kExitCheckFailed;
    }
  } catch (const UsageError& e) {
    err << "gammatime: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "gammatime: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "gammatime: domain error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const PreconditionError& e) {
    err << "gammatime: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const NumericError& e) {
    err << "gammatime: numeric error: " << e.what() << "\n";
    return kExitNumeric;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace gammatime::cli
