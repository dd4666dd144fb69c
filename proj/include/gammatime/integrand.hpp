#pragma once

#include <string>
#include <variant>
#include <vector>

#include "gammatime/ext_real.hpp"

namespace gammatime {

// f = values[i] on (breakpoints[i], breakpoints[i+1]], f(breakpoints[0]) =
// values[0], zero elsewhere on [0, inf).  The last breakpoint may be +inf.
struct PiecewiseConstant {
  std::vector<double> breakpoints;
  std::vector<double> values;
};

// f(x) = coefficient * x^exponent on (lower, upper], zero elsewhere.  upper
// may be +inf.  The stable-type family x^{-1/alpha} has exponent -1/alpha.
struct PowerLaw {
  double coefficient = 1.0;
  double exponent = 0.0;
  double lower = 0.0;
  double upper = 1.0;
};

// A real function on [0, inf) whose power integrals int |f|^l dx are
// available in closed form.
class Integrand {
 public:
  using Repr = std::variant<PiecewiseConstant, PowerLaw>;

  Integrand();  // the zero function
  explicit Integrand(PiecewiseConstant pc);
  explicit Integrand(PowerLaw pw);

  static Integrand zero();
  static Integrand indicator(double lo, double hi);  // 1 on [lo, hi]
  static Integrand constant(double value, double lo, double hi);
  static Integrand piecewise(std::vector<double> breakpoints, std::vector<double> values);
  static Integrand power(double coefficient, double exponent, double lower, double upper);
  static Integrand power_alpha(double coefficient, double alpha, double lower, double upper);

  // Parses the CLI mini-language (see README):
  //   pc:0,0.5,1;v=2,1      pow:c=1,alpha=0.5,a=0,b=1      pow:c=1,k=1,a=0,b=1
  static Integrand parse(const std::string& spec);
  std::string spec() const;

  const Repr& repr() const { return repr_; }
  bool is_piecewise() const { return std::holds_alternative<PiecewiseConstant>(repr_); }
  bool is_power() const { return std::holds_alternative<PowerLaw>(repr_); }
  const PiecewiseConstant& as_piecewise() const { return std::get<PiecewiseConstant>(repr_); }
  const PowerLaw& as_power() const { return std::get<PowerLaw>(repr_); }

  double operator()(double x) const;

  bool is_zero() const;
  bool is_nonnegative() const;
  bool is_bounded() const;
  // Lebesgue measure of {f != 0}.
  ExtReal support_measure() const;
  // Smallest interval [lo, hi] outside which f vanishes.
  double support_lo() const;
  double support_hi() const;

  // int_lo^hi |f|^l dx for l > 0.
  ExtReal abs_power_integral(double l, double lo = 0.0, double hi = kInf) const;
  // int f^l dx over [lo, hi] for a positive integer l (keeps the sign for odd l).
  ExtReal power_integral(int l, double lo = 0.0, double hi = kInf) const;
  // int |f|^l 1{|f| > level} dx  (above) or  int |f|^l 1{|f| <= level} dx.
  ExtReal level_power_integral(double l, double level, bool above) const;

  Integrand scaled(double s) const;

  // Pointwise sum of two piecewise-constant integrands.
  friend Integrand operator+(const Integrand& f, const Integrand& g);

  static constexpr double kInf = std::numeric_limits<double>::infinity();

 private:
  Repr repr_;
};

}  // namespace gammatime
