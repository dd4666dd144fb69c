#include "gammatime/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gammatime/errors.hpp"

namespace gammatime {

namespace {

constexpr double kE1AtOne = 0.21938393439552027368;

// Ein(v) = sum_{k>=1} (-1)^{k+1} v^k / (k k!), valid and well conditioned for v <= 1.
double ein_series(double v) {
  double term = 1.0;  // (-v)^k / k!
  double sum = 0.0;
  for (int k = 1; k < 60; ++k) {
    term *= -v / k;
    const double add = -term / k;
    sum += add;
    if (std::fabs(add) <= 1e-17 * std::fabs(sum)) break;
  }
  return sum;
}

// Modified Lentz evaluation of the continued fraction for e^{v} E1(v).
double e1_continued_fraction(double v) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  double b = v + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double del = c * d;
    h *= del;
    if (std::fabs(del - 1.0) < eps) return h * std::exp(-v);
  }
  throw NumericError("exp_integral_e1: continued fraction did not converge");
}

}  // namespace

double e1_density(double x) {
  if (!(x > 0.0)) throw DomainError("e1_density: x must be positive");
  return std::exp(-x) / x;
}

double exp_integral_e1(double v) {
  if (!(v > 0.0)) throw DomainError("exp_integral_e1: v must be positive");
  if (std::isinf(v)) return 0.0;
  if (v <= 1.0) return -kEulerGamma - std::log(v) + ein_series(v);
  return e1_continued_fraction(v);
}

double h_inverse(double x, const InversionOptions& opts) {
  if (!(x > 0.0)) throw DomainError("h_inverse: x must be positive");
  if (std::isinf(x)) return 0.0;
  if (x > 700.0) return std::exp(-kEulerGamma - x);  // Ein(v) < 1e-300

  double llo;
  double lhi;
  if (x >= kE1AtOne) {
    // v <= 1, so v = v0 e^{Ein(v)} with 0 <= Ein(v) <= v <= v0 e.
    const double v0 = std::exp(-kEulerGamma - x);
    llo = std::log(v0);
    lhi = std::min(0.0, llo + std::numbers::e * v0);
    if (lhi <= llo) lhi = llo + 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(llo));
  } else {
    // v > 1: double until E1 drops below x.
    double hi = 2.0;
    int guard = 0;
    while (exp_integral_e1(hi) > x) {
      hi *= 2.0;
      if (++guard > 64) throw BracketError("h_inverse: could not bracket", 1.0, hi);
    }
    llo = 0.0;
    lhi = std::log(hi);
  }

  const double tol = opts.tol_rel * x;
  for (int it = 0; it < opts.max_iter; ++it) {
    const double lmid = 0.5 * (llo + lhi);
    const double v = std::exp(lmid);
    const double r = exp_integral_e1(v) - x;
    if (std::fabs(r) <= tol) return v;
    if (r > 0.0) {
      llo = lmid;  // E1 decreasing: v too small
    } else {
      lhi = lmid;
    }
    if (!(lhi - llo > 2 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(lmid)))) {
      return std::exp(0.5 * (llo + lhi));
    }
  }
  throw BracketError("h_inverse: iteration cap reached", std::exp(llo), std::exp(lhi));
}

double solve_bracketed(const BracketedEquation& eq) {
  if (!eq.evaluator) throw PreconditionError("solve_bracketed: empty evaluator");
  if (!(eq.lo < eq.hi)) throw PreconditionError("solve_bracketed: need lo < hi");
  double lo = eq.lo;
  double hi = eq.hi;
  double flo = eq.evaluator(lo);
  const double fhi = eq.evaluator(hi);
  if (std::isnan(flo) || std::isnan(fhi)) throw PreconditionError("solve_bracketed: NaN at bracket end");
  if (std::fabs(flo) <= eq.tol_abs) return lo;
  if (std::fabs(fhi) <= eq.tol_abs) return hi;
  if (flo * fhi > 0.0) {
    std::ostringstream msg;
    msg << "solve_bracketed: no sign change on [" << lo << ", " << hi << "]";
    throw PreconditionError(msg.str());
  }
  for (int it = 0; it < eq.max_iter; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) return mid;
    const double fmid = eq.evaluator(mid);
    if (std::fabs(fmid) <= eq.tol_abs) return mid;
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  throw BracketError("solve_bracketed: iteration cap reached", lo, hi);
}

double shifted_symmetric_constant() {
  BracketedEquation eq;
  eq.evaluator = [](double c) { return c - std::log1p(-c * c); };
  eq.lo = -0.99;
  eq.hi = -0.1;
  eq.tol_abs = 1e-15;
  return solve_bracketed(eq);
}

}  // namespace gammatime
