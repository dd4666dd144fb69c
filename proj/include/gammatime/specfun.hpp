#pragma once

#include <functional>

namespace gammatime {

inline constexpr double kEulerGamma = 0.57721566490153286060651209;

// Tolerances for h_inverse.  The stopping rule is relative,
// |E1(H(x)) - x| <= tol_rel * x, or a bracket that can no longer be halved.
struct InversionOptions {
  double tol_rel = 1e-12;
  int max_iter = 200;
};

// e^{-x}/x, the Levy density of the unit Gamma process.
double e1_density(double x);

// E1(v) = int_v^inf e^{-x}/x dx.  Power series below v = 1, continued
// fraction above.
double exp_integral_e1(double v);

// H = E1^{-1}, the jump-size transform of the shot-noise series.  Bracketed
// halving in log v; the starting bracket uses E1(v) = -gamma - ln v + Ein(v)
// with 0 <= Ein(v) <= v.  Throws BracketError on non-convergence.
// For x above ~745 the result underflows to 0.
double h_inverse(double x, const InversionOptions& opts = {});

struct BracketedEquation {
  std::function<double(double)> evaluator;
  double lo = 0.0;
  double hi = 0.0;
  double tol_abs = 1e-14;
  int max_iter = 200;
};

// Bisection.  Returns a point with |evaluator| <= tol_abs, or the midpoint of
// a bracket that has collapsed to adjacent doubles.  Deterministic.
double solve_bracketed(const BracketedEquation& eq);

// Root of c = ln(1 - c^2) on (-1, 0), the shift constant of the symmetric
// Gamma exponential martingale.  Approximately -0.714556.
double shifted_symmetric_constant();

}  // namespace gammatime
