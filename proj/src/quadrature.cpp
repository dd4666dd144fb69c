#include "gammatime/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "gammatime/errors.hpp"

namespace gammatime {

namespace {

double slope_between(const std::function<double(double)>& g, double x1, double x2, double shift) {
  const double g1 = std::fabs(g(shift + x1));
  const double g2 = std::fabs(g(shift + x2));
  if (!(g1 > 0.0) || !(g2 > 0.0) || !std::isfinite(g1) || !std::isfinite(g2)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return (std::log(g2) - std::log(g1)) / (std::log(x2) - std::log(x1));
}

}  // namespace

double tail_power_at_infinity(const std::function<double(double)>& g) {
  return slope_between(g, 1e10, 1e12, 0.0);
}

double tail_power_at_endpoint(const std::function<double(double)>& g, double a) {
  const double scale = std::max(1.0, std::fabs(a));
  return slope_between(g, 1e-12 * scale, 1e-10 * scale, a);
}

QuadResult integrate(const std::function<double(double)>& g, double a, double b,
                     const QuadOptions& opts) {
  if (!(a < b)) {
    if (a == b) return {};
    throw PreconditionError("integrate: need a <= b");
  }
  if (std::isinf(a)) throw PreconditionError("integrate: lower limit must be finite");

  QuadResult result;
  // Blow-up at the lower end.  A slope of exactly -1 still diverges.
  {
    const double s = tail_power_at_endpoint(g, a);
    if (std::isfinite(s) && s <= -1.0 + opts.slope_slack) {
      result.status = QuadResult::Status::divergent;
      return result;
    }
  }
  if (std::isinf(b)) {
    const double s = tail_power_at_infinity(g);
    if (std::isfinite(s) && s >= -1.0 - opts.slope_slack) {
      result.status = QuadResult::Status::divergent;
      return result;
    }
  } else {
    const double scale = std::max(1.0, std::fabs(b));
    const double s = slope_between([&](double d) { return g(b - d); }, 1e-12 * scale, 1e-10 * scale, 0.0);
    if (std::isfinite(s) && s <= -1.0 + opts.slope_slack) {
      result.status = QuadResult::Status::divergent;
      return result;
    }
  }

  // The endpoint probes above have ruled out a non-integrable blow-up, so an
  // overflow at a node within a few ulps-of-scale of an end carries no mass.
  const double lo_end = a;
  const double hi_end = b;
  const auto guarded = [&](double x) {
    const double v = g(x);
    if (std::isfinite(v)) return v;
    const double near = 1e-100 * std::max(1.0, std::fabs(x));
    if (x - lo_end < near || (std::isfinite(hi_end) && hi_end - x < near)) return 0.0;
    return v;
  };

  try {
    double err = 0.0;
    double l1 = 0.0;
    if (std::isinf(b)) {
      thread_local boost::math::quadrature::exp_sinh<double> half_line;
      thread_local boost::math::quadrature::tanh_sinh<double> finite_part;
      // Split at a + 1 so that a singular lower end is handled by tanh-sinh.
      double e1 = 0.0;
      const double head = finite_part.integrate(guarded, a, a + 1.0, opts.tol_rel, &e1, &l1);
      double e2 = 0.0;
      const double tail = half_line.integrate(
          [&](double x) { return guarded(a + 1.0 + x); }, opts.tol_rel, &e2, &l1);
      result.value = head + tail;
      err = e1 + e2;
    } else {
      thread_local boost::math::quadrature::tanh_sinh<double> finite;
      result.value = finite.integrate(guarded, a, b, opts.tol_rel, &err, &l1);
    }
    result.error = err;
  } catch (const std::exception& e) {
    throw NumericError(std::string("integrate: quadrature failed: ") + e.what());
  }
  if (!std::isfinite(result.value)) {
    result.status = QuadResult::Status::divergent;
  }
  return result;
}

}  // namespace gammatime
