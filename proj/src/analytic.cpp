#include "gammatime/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gammatime/errors.hpp"
#include "gammatime/modular.hpp"
#include "gammatime/quadrature.hpp"

namespace gammatime {

namespace {

// Integer partitions of p as multiplicity vectors, in lexicographic order of
// the parts (largest part first).
void partitions(int remaining, int max_part, std::vector<int>& mult, std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(mult);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    ++mult[static_cast<std::size_t>(part - 1)];
    partitions(remaining - part, part, mult, out);
    --mult[static_cast<std::size_t>(part - 1)];
  }
}

using Wide = __int128;

Wide factorial(int n) {
  Wide r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Number of permutations of p elements with j_l cycles of length l.
Wide cycle_type_count(int p, const std::vector<int>& mult) {
  Wide denom = 1;
  for (std::size_t l = 1; l <= mult.size(); ++l) {
    for (int r = 0; r < mult[l - 1]; ++r) denom *= static_cast<Wide>(l);
    denom *= factorial(mult[l - 1]);
  }
  return factorial(p) / denom;
}

double safe_exponent(const ExtReal& v, const char* what) {
  if (!v.is_finite()) throw DomainError(std::string(what) + ": the integral in the exponent diverges");
  return v.value();
}

}  // namespace

double laplace_gamma(const Integrand& f, double theta) {
  if (!f.is_nonnegative()) throw PreconditionError("laplace_gamma: f must be nonnegative");
  if (!(theta >= 0.0)) throw PreconditionError("laplace_gamma: theta must be >= 0");
  if (theta == 0.0 || f.is_zero()) return 1.0;
  const ExtReal e = functional_integral(f, [theta](double u) { return std::log1p(theta * u); });
  return std::exp(-safe_exponent(e, "laplace_gamma"));
}

std::complex<double> fourier_gamma(const Integrand& f, double theta, double beta) {
  if (!(beta >= -1.0 && beta <= 1.0)) throw PreconditionError("fourier_gamma: beta must lie in [-1, 1]");
  if (theta == 0.0 || f.is_zero()) return {1.0, 0.0};
  const double t2 = theta * theta;
  const double modulus_exp =
      safe_exponent(functional_integral(f, [t2](double u) { return 0.5 * std::log1p(t2 * u * u); }), "fourier_gamma");
  double phase = 0.0;
  if (beta != 0.0) {
    phase = beta * safe_exponent(functional_integral(f, [theta](double u) { return std::atan(theta * u); }, false),
                                 "fourier_gamma");
  }
  return std::polar(std::exp(-modulus_exp), phase);
}

double bell_partial(int n, int k, std::span<const double> x) {
  if (n < 0 || k < 0 || k > n) throw PreconditionError("bell_partial: need 0 <= k <= n");
  if (n > 0 && k > 0 && x.size() < static_cast<std::size_t>(n - k + 1)) {
    throw PreconditionError("bell_partial: need x_1 .. x_{n-k+1}");
  }
  // B_{m,j} = sum_{i=1}^{m-j+1} C(m-1, i-1) x_i B_{m-i, j-1}, B_{0,0} = 1.
  std::vector<std::vector<double>> b(static_cast<std::size_t>(n + 1), std::vector<double>(static_cast<std::size_t>(k + 1), 0.0));
  b[0][0] = 1.0;
  for (int m = 1; m <= n; ++m) {
    for (int j = 1; j <= std::min(m, k); ++j) {
      double sum = 0.0;
      double binom = 1.0;  // C(m-1, i-1)
      for (int i = 1; i <= m - j + 1; ++i) {
        sum += binom * x[static_cast<std::size_t>(i - 1)] * b[static_cast<std::size_t>(m - i)][static_cast<std::size_t>(j - 1)];
        binom = binom * (m - i) / i;
      }
      b[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] = sum;
    }
  }
  return b[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

std::vector<double> levy_moments(const Integrand& f, int p) {
  std::vector<double> m;
  for (int l = 1; l <= p; ++l) {
    const ExtReal v = f.power_integral(l);
    if (!v.is_finite()) throw DomainError("levy_moments: int f^" + std::to_string(l) + " diverges");
    m.push_back(v.value());
  }
  return m;
}

std::vector<MomentTerm> moment_terms(std::span<const double> m, int p) {
  if (p < 1 || p > 20) throw PreconditionError("moment_terms: p must be in 1..20");
  if (m.size() < static_cast<std::size_t>(p)) throw PreconditionError("moment_terms: need m_1 .. m_p");
  std::vector<std::vector<int>> parts;
  std::vector<int> mult(static_cast<std::size_t>(p), 0);
  partitions(p, p, mult, parts);
  std::vector<MomentTerm> out;
  out.reserve(parts.size());
  for (auto& j : parts) {
    MomentTerm t;
    t.count = static_cast<double>(cycle_type_count(p, j));
    double prod = 1.0;
    for (std::size_t l = 1; l <= j.size(); ++l) {
      for (int r = 0; r < j[l - 1]; ++r) prod *= m[l - 1];
    }
    t.value = t.count * prod;
    t.multiplicities = std::move(j);
    out.push_back(std::move(t));
  }
  return out;
}

double moments_from_levy(std::span<const double> m, int p) {
  double sum = 0.0;
  for (const auto& t : moment_terms(m, p)) sum += t.value;
  return sum;
}

bool even_moment_terms_nonnegative(std::span<const double> m, int p) {
  if (p % 2 != 0) throw PreconditionError("even_moment_terms_nonnegative: p must be even");
  if (m.empty() || m[0] != 0.0) throw PreconditionError("even_moment_terms_nonnegative: needs m_1 = 0");
  for (const auto& t : moment_terms(m, p)) {
    if (t.value < 0.0) return false;
  }
  return true;
}

PnormBounds pnorm_bounds(const Integrand& f, double p) {
  if (!f.is_nonnegative()) throw PreconditionError("pnorm_bounds: f must be nonnegative");
  if (!(p > 0.0)) throw PreconditionError("pnorm_bounds: p must be positive");
  const ExtReal c = f.support_measure();
  if (!c.is_finite()) throw PreconditionError("pnorm_bounds: support of f must have finite measure");
  const ExtReal mp = f.abs_power_integral(p);
  if (!mp.is_finite()) throw DomainError("pnorm_bounds: int f^p diverges");
  PnormBounds b;
  b.support = c.value();
  if (b.support == 0.0) return b;
  const double lg_c = std::lgamma(b.support);
  b.lower = std::exp(std::lgamma(b.support + p - 1.0) - lg_c) * mp.value();
  b.upper = std::exp(std::lgamma(b.support + p) - lg_c) * mp.value();
  b.jensen_upper = std::exp(std::lgamma(b.support + p) - std::lgamma(b.support + 1.0)) * mp.value();
  return b;
}

ThorinDescriptor ThorinDescriptor::from_atoms(std::vector<Atom> atoms, double escaped_mass) {
  std::map<double, double> merged;
  for (const auto& a : atoms) {
    if (!(a.weight >= 0.0) || !(a.location > 0.0) || std::isinf(a.location)) {
      throw PreconditionError("ThorinDescriptor: atoms need weight >= 0 and finite location > 0");
    }
    if (a.weight > 0.0) merged[a.location] += a.weight;
  }
  ThorinDescriptor d;
  for (const auto& [loc, w] : merged) d.atoms_.push_back({w, loc});
  d.escaped_ = std::max(0.0, escaped_mass);
  return d;
}

ThorinDescriptor ThorinDescriptor::from_integrand(const Integrand& f) {
  ThorinDescriptor d;
  d.integrand_ = std::make_shared<const Integrand>(f);
  const ExtReal support = f.support_measure();
  d.escaped_ = support.is_finite() ? std::max(0.0, 1.0 - support.value()) : 0.0;
  return d;
}

double ThorinDescriptor::k(double y) const {
  if (!(y >= 0.0)) throw PreconditionError("ThorinDescriptor::k: y must be >= 0");
  if (!integrand_) {
    double sum = 0.0;
    for (const auto& a : atoms_) sum += a.weight * std::exp(-y * a.location);
    return sum;
  }
  const Integrand& f = *integrand_;
  const double lo = f.support_lo();
  const double hi = std::min(1.0, f.support_hi());
  if (!(hi > lo)) return 0.0;
  const QuadResult r = integrate(
      [&](double u) {
        const double v = f(u);
        return v > 0.0 ? std::exp(-y / v) : 0.0;
      },
      lo, hi);
  return r.value;
}

double ThorinDescriptor::cdf(double y) const {
  if (!(y > 0.0)) return 0.0;
  if (!integrand_) {
    double sum = 0.0;
    for (const auto& a : atoms_) {
      if (a.location <= y) sum += a.weight;
    }
    return std::min(1.0, sum);
  }
  // P(f(U) >= 1/y) for a power integrand on [0, 1].
  const PowerLaw& pw = integrand_->as_power();
  const double level = 1.0 / y;
  const double lo = pw.lower;
  const double hi = std::min(1.0, pw.upper);
  if (pw.coefficient <= 0.0 || !(hi > lo)) return 0.0;
  if (pw.exponent == 0.0) return pw.coefficient >= level ? hi - lo : 0.0;
  const double x_star = std::pow(level / pw.coefficient, 1.0 / pw.exponent);
  if (pw.exponent < 0.0) return std::max(0.0, std::min(hi, x_star) - lo);
  return std::max(0.0, hi - std::max(lo, x_star));
}

ThorinDescriptor thorin_from_integrand(const Integrand& f) {
  if (!f.is_nonnegative()) throw PreconditionError("thorin_from_integrand: f must be nonnegative");
  if (f.support_hi() > 1.0 && !f.is_zero()) throw PreconditionError("thorin_from_integrand: f must vanish outside [0, 1]");
  if (f.is_power()) return ThorinDescriptor::from_integrand(f);
  const auto& pc = f.as_piecewise();
  std::vector<ThorinDescriptor::Atom> atoms;
  double covered = 0.0;
  for (std::size_t i = 0; i < pc.values.size(); ++i) {
    if (pc.values[i] <= 0.0) continue;
    const double len = pc.breakpoints[i + 1] - pc.breakpoints[i];
    atoms.push_back({len, 1.0 / pc.values[i]});
    covered += len;
  }
  return ThorinDescriptor::from_atoms(std::move(atoms), 1.0 - covered);
}

bool completely_monotone_on_grid(const std::function<double(double)>& k, std::span<const double> grid, int max_order) {
  if (grid.size() < static_cast<std::size_t>(max_order) + 1) {
    throw PreconditionError("completely_monotone_on_grid: grid too short for the requested order");
  }
  std::vector<double> dd(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) dd[i] = k(grid[i]);
  const double scale = *std::max_element(dd.begin(), dd.end(), [](double a, double b) { return std::fabs(a) < std::fabs(b); });
  if (*std::min_element(dd.begin(), dd.end()) < 0.0) return false;
  for (int order = 1; order <= max_order; ++order) {
    std::vector<double> next(dd.size() - 1);
    for (std::size_t i = 0; i + 1 < dd.size(); ++i) {
      next[i] = (dd[i + 1] - dd[i]) / (grid[i + static_cast<std::size_t>(order)] - grid[i]);
    }
    dd = std::move(next);
    const double sign = order % 2 == 0 ? 1.0 : -1.0;
    for (double v : dd) {
      if (sign * v < -1e-9 * std::fabs(scale)) return false;
    }
  }
  return true;
}

double cdf_quantile(const std::function<double(double)>& cdf, double u) {
  if (!(u > 0.0 && u <= 1.0)) throw PreconditionError("cdf_quantile: u must lie in (0, 1]");
  double lo = 1.0;
  double hi = 1.0;
  if (cdf(hi) >= u) {
    for (int i = 0; cdf(lo) >= u; ++i) {
      hi = lo;
      lo *= 0.5;
      if (i > 1070) return 0.0;
    }
  } else {
    for (int i = 0; cdf(hi) < u; ++i) {
      lo = hi;
      hi *= 2.0;
      if (i > 1020) throw PreconditionError("cdf_quantile: cdf never reaches u (improper distribution?)");
    }
  }
  for (int i = 0; i < 200 && hi > lo * (1.0 + 1e-15); ++i) {
    const double mid = std::sqrt(lo * hi);
    if (!(mid > lo && mid < hi)) break;
    (cdf(mid) >= u ? hi : lo) = mid;
  }
  return hi;
}

Integrand integrand_from_thorin(const std::function<double(double)>& cdf, std::size_t cells) {
  if (cells < 1) throw PreconditionError("integrand_from_thorin: cells must be >= 1");
  if (cdf(1e-300) > 1e-12) throw PreconditionError("integrand_from_thorin: cdf has mass at 0 (f would be infinite)");
  if (cdf(1e300) < 1.0 - 1e-12) throw PreconditionError("integrand_from_thorin: cdf is not proper (mass at infinity)");
  constexpr double kEps = 1e-15;
  auto q = [&](double u) { return cdf_quantile(cdf, std::min(1.0, u)); };
  auto same = [](double a, double b) { return std::fabs(a - b) <= 1e-14 * std::max(std::fabs(a), std::fabs(b)); };

  std::vector<double> bp{0.0};
  std::vector<double> vals;
  auto emit = [&](double hi, double quantile) {
    bp.push_back(hi);
    vals.push_back(1.0 / quantile);
  };
  // Refines a cell that holds at most one quantile jump down to width 1e-13.
  std::function<void(double, double)> refine = [&](double lo, double hi) {
    const double a = q(lo + kEps);
    const double b = q(hi);
    if (same(a, b)) return emit(hi, b);
    const double mid = 0.5 * (lo + hi);
    if (hi - lo < 1e-13) return emit(hi, q(mid));
    const bool left_const = same(a, q(mid));
    const bool right_const = same(q(mid + kEps), b);
    if (!left_const && !right_const) return emit(hi, q(mid));  // no isolated jump: sample
    refine(lo, mid);
    refine(mid, hi);
  };
  for (std::size_t i = 0; i < cells; ++i) {
    refine(static_cast<double>(i) / cells, static_cast<double>(i + 1) / cells);
  }
  // Merge neighbours with equal values.
  std::vector<double> mbp{bp.front()};
  std::vector<double> mvals;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!mvals.empty() && mvals.back() == vals[i]) {
      mbp.back() = bp[i + 1];
    } else {
      mvals.push_back(vals[i]);
      mbp.push_back(bp[i + 1]);
    }
  }
  return Integrand::piecewise(std::move(mbp), std::move(mvals));
}

Integrand integrand_from_thorin(const ThorinDescriptor& d) {
  if (d.escaped_mass() > 1e-12) throw PreconditionError("integrand_from_thorin: Thorin measure is not proper");
  if (!d.is_atomic()) return integrand_from_thorin([&d](double y) { return d.cdf(y); });
  // f = 1/y on consecutive cells of width w, y ascending.
  std::vector<double> bp{0.0};
  std::vector<double> vals;
  double acc = 0.0;
  for (const auto& a : d.atoms()) {
    acc += a.weight;
    bp.push_back(acc);
    vals.push_back(1.0 / a.location);
  }
  return Integrand::piecewise(std::move(bp), std::move(vals));
}

bool inverse_moment_finite(double theta, double t) {
  if (!(theta > 0.0) || !(t > 0.0)) throw PreconditionError("inverse_moment_finite: theta and t must be positive");
  if (theta < 1.0) return true;
  if (theta > 1.0) return false;
  return t < std::exp(-1.0);
}

double gamma_cdf(double shape, double t) {
  if (!(shape > 0.0)) throw PreconditionError("gamma_cdf: shape must be positive");
  if (!(t > 0.0)) return 0.0;
  const double lg = std::lgamma(shape);
  const QuadResult r =
      integrate([&](double s) { return std::exp((shape - 1.0) * std::log(s) - s - lg); }, 0.0, t);
  return std::min(1.0, r.value);
}

}  // namespace gammatime
