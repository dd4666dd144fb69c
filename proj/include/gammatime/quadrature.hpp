#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gammatime {

struct QuadResult {
  enum class Status { ok, divergent };
  Status status = Status::ok;
  double value = 0.0;
  double error = 0.0;

  bool divergent() const { return status == Status::divergent; }
};

struct QuadOptions {
  double tol_rel = 1e-12;
  // Log-log slope thresholds for the endpoint divergence probes: an integrand
  // decaying no faster than x^{-1+slack} at infinity, or blowing up at least
  // as fast as x^{-1+slack} at a finite end, is reported divergent.
  double slope_slack = 0.02;
};

// Integral of g over (a, b]; b may be +infinity.  Tanh-sinh on finite ranges,
// exp-sinh on half lines.  Before integrating, the local power of |g| is
// estimated at each end; a non-integrable power yields Status::divergent.
QuadResult integrate(const std::function<double(double)>& g, double a, double b,
                     const QuadOptions& opts = {});

// Estimated exponent s of |g(x)| ~ x^s as x -> infinity, or NaN when g vanishes there.
double tail_power_at_infinity(const std::function<double(double)>& g);

// Estimated exponent s of |g(a + d)| ~ d^s as d -> 0+.
double tail_power_at_endpoint(const std::function<double(double)>& g, double a);

// Gauss-Hermite rule for the weight e^{-x^2}; nodes ascending.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point rule, computed once per n and cached (thread safe).
const GaussHermiteRule& gauss_hermite_rule(std::size_t n);

// E g(Z), Z ~ N(0,1), with an n-point Gauss-Hermite rule.
double gaussian_expectation(const std::function<double(double)>& g, std::size_t n);

}  // namespace gammatime
