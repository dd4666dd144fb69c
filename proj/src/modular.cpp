#include "gammatime/modular.hpp"

#include <algorithm>
#include <cmath>

#include "gammatime/errors.hpp"
#include "gammatime/quadrature.hpp"
#include "gammatime/specfun.hpp"

namespace gammatime {

namespace {

const char* kind_name(ModularKind::Kind k) {
  switch (k) {
    case ModularKind::Kind::phi0_min: return "phi0_min";
    case ModularKind::Kind::phi0_ratio: return "phi0_ratio";
    case ModularKind::Kind::phi0_exp: return "phi0_exp";
    case ModularKind::Kind::phi0_arctan: return "phi0_arctan";
    case ModularKind::Kind::phi1: return "phi1";
    case ModularKind::Kind::phi2: return "phi2";
    case ModularKind::Kind::phi1_squared: return "phi1_squared";
    default: return "custom";
  }
}

}  // namespace

ModularKind::ModularKind(Kind k) : kind_(k), name_(kind_name(k)) {}

ModularKind ModularKind::custom(std::function<double(double)> phi, std::string name) {
  if (!phi) throw PreconditionError("custom modular: missing evaluator");
  if (phi(0.0) != 0.0) throw PreconditionError("custom modular: phi(0) must be 0");
  const std::vector<double> grid = default_modular_grid(61);
  double prev = 0.0;
  for (double u : grid) {
    const double v = phi(u);
    if (!(v >= 0.0)) throw PreconditionError("custom modular: phi must be nonnegative");
    if (v < prev) throw PreconditionError("custom modular: phi must be nondecreasing");
    prev = v;
  }
  for (std::size_t i = 0; i < grid.size(); i += 6) {
    for (std::size_t j = 0; j < grid.size(); j += 6) {
      for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double lhs = phi(alpha * grid[i] + (1.0 - alpha) * grid[j]);
        if (lhs > (phi(grid[i]) + phi(grid[j])) * (1.0 + 1e-14)) {
          throw PreconditionError("custom modular: phi violates phi(au + (1-a)v) <= phi(u) + phi(v)");
        }
      }
    }
  }
  ModularKind out(Kind::custom);
  out.name_ = std::move(name);
  out.fn_ = std::move(phi);
  return out;
}

ModularKind ModularKind::parse(const std::string& name) {
  for (Kind k : {Kind::phi0_min, Kind::phi0_ratio, Kind::phi0_exp, Kind::phi0_arctan, Kind::phi1, Kind::phi2,
                 Kind::phi1_squared}) {
    if (name == kind_name(k)) return ModularKind(k);
  }
  throw PreconditionError("unknown modular '" + name + "'");
}

double ModularKind::operator()(double u) const {
  switch (kind_) {
    case Kind::phi0_min: return std::min(u, 1.0);
    case Kind::phi0_ratio: return u / (1.0 + u);
    case Kind::phi0_exp: return -std::expm1(-u);
    case Kind::phi0_arctan: return std::atan(u);
    case Kind::phi1: return std::log1p(u);
    case Kind::phi2: return 0.5 * std::log1p(u * u);
    case Kind::phi1_squared: return std::log1p(u * u);
    default: return fn_(u);
  }
}

ExtReal functional_integral(const Integrand& f, const std::function<double(double)>& g, bool absolute) {
  if (f.is_zero()) return 0.0;
  if (f.is_piecewise()) {
    const auto& pc = f.as_piecewise();
    double total = 0.0;
    for (std::size_t i = 0; i < pc.values.size(); ++i) {
      const double v = g(absolute ? std::fabs(pc.values[i]) : pc.values[i]);
      if (v == 0.0) continue;
      if (std::isinf(v)) return ExtReal::infinity();
      const double len = pc.breakpoints[i + 1] - pc.breakpoints[i];
      if (std::isinf(len)) return v > 0 ? ExtReal::infinity() : ExtReal::neg_infinity();
      total += v * len;
    }
    return total;
  }
  const auto& pw = f.as_power();
  const double c = absolute ? std::fabs(pw.coefficient) : pw.coefficient;
  const double k = pw.exponent;
  const QuadResult r = integrate([&](double x) { return g(c * std::pow(x, k)); }, pw.lower, pw.upper);
  if (r.divergent()) {
    // Sign of the divergent tail: probe the integrand near the far end.
    const double probe = std::isinf(pw.upper) ? 1e10 : pw.lower + 1e-12;
    return g(c * std::pow(probe, k)) < 0.0 ? ExtReal::neg_infinity() : ExtReal::infinity();
  }
  return r.value;
}

ExtReal modular_value(const ModularKind& phi, const Integrand& f) {
  return functional_integral(f, [&phi](double u) { return phi(u); });
}

ExtReal f_norm(const ModularKind& phi, const Integrand& f, double tol_rel) {
  if (f.is_zero()) return 0.0;
  auto feasible = [&](double c) {
    const ExtReal m = modular_value(phi, f.scaled(1.0 / c));
    return m.is_finite() && m.value() <= c;
  };
  // Phi(f / c) decreases in c, so feasibility is monotone: find an infeasible
  // lo and a feasible hi, then halve in log c.
  double hi = 1.0;
  int guard = 0;
  while (!feasible(hi)) {
    hi *= 2.0;
    if (++guard > 1000) return ExtReal::infinity();
  }
  double lo = hi / 2.0;
  guard = 0;
  while (feasible(lo)) {
    hi = lo;
    lo /= 2.0;
    if (++guard > 1000) return 0.0;
  }
  for (int i = 0; i < 200 && hi - lo > tol_rel * hi; ++i) {
    const double mid = std::sqrt(lo * hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

bool equivalence_witness(const ModularKind& phi_i, const ModularKind& phi_j, double a, double b,
                         std::span<const double> grid) {
  if (!(a > 0.0) || !(b > 0.0)) throw PreconditionError("equivalence_witness: a and b must be positive");
  for (double u : grid) {
    const double lhs = a * phi_i(b * u);
    const double rhs = phi_j(u);
    if (lhs > rhs + 1e-14 * std::max(1.0, std::fabs(rhs))) return false;
  }
  return true;
}

std::vector<double> default_modular_grid(std::size_t points) {
  if (points < 2) throw PreconditionError("default_modular_grid: need at least two points");
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = std::pow(10.0, -6.0 + 12.0 * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  return grid;
}

std::optional<std::pair<double, double>> find_equivalence_constants(const ModularKind& phi_i,
                                                                     const ModularKind& phi_j,
                                                                     std::span<const double> grid) {
  for (int ia = 0; ia <= 20; ++ia) {
    const double a = std::ldexp(1.0, -ia);
    for (int ib = ia; ib <= 20; ++ib) {
      const double b = std::ldexp(1.0, -ib);
      if (equivalence_witness(phi_i, phi_j, a, b, grid)) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

std::string to_string(Integrability v) {
  switch (v) {
    case Integrability::integrable: return "integrable";
    case Integrability::not_integrable: return "not_integrable";
    default: return "boundary";
  }
}

Integrability gamma_integrable(const Integrand& f, double beta) {
  if (!(beta >= -1.0 && beta <= 1.0)) throw PreconditionError("gamma_integrable: beta must lie in [-1, 1]");
  try {
    const ExtReal m = modular_value(beta != 0.0 ? ModularKind::phi1() : ModularKind::phi2(), f);
    return m.is_finite() ? Integrability::integrable : Integrability::not_integrable;
  } catch (const NumericError&) {
    return Integrability::boundary;
  }
}

bool p_moment_exists(const Integrand& f, double p, double c) {
  if (!(p > 0.0)) throw PreconditionError("p_moment_exists: p must be positive");
  if (!(c > 0.0)) throw PreconditionError("p_moment_exists: c must be positive");
  return f.level_power_integral(1.0, c, false).is_finite() && f.level_power_integral(p, c, true).is_finite();
}

double qv_kernel_gaussian(double theta) {
  theta = std::fabs(theta);
  if (theta == 0.0) return 0.0;
  const double two_t2 = 2.0 * theta * theta;
  auto g = [two_t2](double z) { return 0.5 * std::log1p(two_t2 * z * z); };
  if (theta <= 4.0) {
    double prev = gaussian_expectation(g, 64);
    for (std::size_t n = 128; n <= 4096; n *= 2) {
      const double cur = gaussian_expectation(g, n);
      if (std::fabs(cur - prev) < 1e-10) return cur;
      prev = cur;
    }
  }
  // Half-line form: 2 int_0^inf g(z) phi(z) dz.
  const double inv_sqrt_2pi = 0.3989422804014326779399461;
  const QuadResult r = integrate(
      [&](double z) { return 2.0 * g(z) * inv_sqrt_2pi * std::exp(-0.5 * z * z); }, 0.0,
      std::numeric_limits<double>::infinity());
  if (r.divergent()) throw NumericError("qv_kernel_gaussian: quadrature reported divergence");
  return r.value;
}

double qv_kernel_direct(double theta) {
  theta = std::fabs(theta);
  if (theta == 0.0) return 0.0;
  const double t2 = theta * theta;
  const QuadResult r = integrate([t2](double x) { return -std::expm1(-x * x * t2) * std::exp(-x) / x; }, 0.0,
                                 std::numeric_limits<double>::infinity());
  if (r.divergent()) throw NumericError("qv_kernel_direct: quadrature reported divergence");
  return r.value;
}

ExtReal qv_modular(const Integrand& f) { return functional_integral(f, qv_kernel_gaussian); }

ExtReal qv_modular_direct(const Integrand& f) { return functional_integral(f, qv_kernel_direct); }

double cosine_functional(double u) { return 0.5 * std::log1p(u * u); }

double sine_functional(double u) { return std::atan(std::fabs(u)); }

double cosine_dominating_bound(double u) {
  u = std::fabs(u);
  if (u == 0.0) return 0.0;
  // int_0^{1/u} u^2 x e^{-x} dx + E1(1/u)
  const double r = 1.0 / u;
  const double head = u * u * (-std::expm1(-r) - r * std::exp(-r));
  return 2.0 * (head + exp_integral_e1(r));
}

double sine_dominating_bound(double u) {
  u = std::fabs(u);
  if (u == 0.0) return 0.0;
  const double r = 1.0 / u;
  return u * -std::expm1(-r) + exp_integral_e1(r);
}

}  // namespace gammatime
