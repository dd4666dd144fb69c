#include "gammatime/integrand.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "gammatime/errors.hpp"

namespace gammatime {

namespace {

constexpr double kInf = Integrand::kInf;

void validate(const PiecewiseConstant& pc) {
  if (pc.breakpoints.empty() && pc.values.empty()) return;
  if (pc.breakpoints.size() != pc.values.size() + 1 || pc.values.empty()) {
    throw PreconditionError("piecewise integrand: need one more breakpoint than values");
  }
  if (!(pc.breakpoints.front() >= 0.0) || std::isinf(pc.breakpoints.front())) {
    throw PreconditionError("piecewise integrand: first breakpoint must be finite and >= 0");
  }
  for (std::size_t i = 1; i < pc.breakpoints.size(); ++i) {
    if (!(pc.breakpoints[i] > pc.breakpoints[i - 1])) {
      throw PreconditionError("piecewise integrand: breakpoints must be strictly increasing");
    }
    if (i + 1 < pc.breakpoints.size() && std::isinf(pc.breakpoints[i])) {
      throw PreconditionError("piecewise integrand: only the last breakpoint may be infinite");
    }
  }
  for (double v : pc.values) {
    if (!std::isfinite(v)) throw PreconditionError("piecewise integrand: values must be finite");
  }
}

void validate(const PowerLaw& pw) {
  if (!std::isfinite(pw.coefficient) || !std::isfinite(pw.exponent)) {
    throw PreconditionError("power integrand: coefficient and exponent must be finite");
  }
  if (!(pw.lower >= 0.0) || std::isinf(pw.lower) || !(pw.upper > pw.lower)) {
    throw PreconditionError("power integrand: need 0 <= a < b");
  }
}

// int_lo^hi x^q dx for 0 <= lo < hi <= inf.
ExtReal monomial_integral(double q, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  const bool at_zero = lo == 0.0;
  const bool at_inf = std::isinf(hi);
  if (std::fabs(q + 1.0) < 1e-13) {
    if (at_zero || at_inf) return ExtReal::infinity();
    return std::log(hi / lo);
  }
  const double r = q + 1.0;
  if (r < 0.0) {
    if (at_zero) return ExtReal::infinity();
    const double lo_term = std::pow(lo, r);
    if (at_inf) return lo_term / -r;
    return (lo_term - std::pow(hi, r)) / -r;
  }
  if (at_inf) return ExtReal::infinity();
  return (std::pow(hi, r) - std::pow(lo, r)) / r;
}

double overlap(double a, double b, double lo, double hi) {
  const double l = std::max(a, lo);
  const double h = std::min(b, hi);
  return h > l ? h - l : 0.0;
}

ExtReal add(ExtReal acc, ExtReal term) {
  if (acc.is_finite() && term.is_finite()) return acc.value() + term.value();
  const double s = acc.as_double() + term.as_double();
  if (std::isnan(s)) throw DomainError("integral of a signed integrand is inf - inf");
  return s;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0') {
      throw PreconditionError("integrand spec: bad number '" + item + "' in " + what);
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

Integrand::Integrand() : repr_(PiecewiseConstant{}) {}
Integrand::Integrand(PiecewiseConstant pc) : repr_(std::move(pc)) { validate(std::get<PiecewiseConstant>(repr_)); }
Integrand::Integrand(PowerLaw pw) : repr_(pw) { validate(pw); }

Integrand Integrand::zero() { return Integrand(); }

Integrand Integrand::indicator(double lo, double hi) { return constant(1.0, lo, hi); }

Integrand Integrand::constant(double value, double lo, double hi) {
  return Integrand(PiecewiseConstant{{lo, hi}, {value}});
}

Integrand Integrand::piecewise(std::vector<double> breakpoints, std::vector<double> values) {
  return Integrand(PiecewiseConstant{std::move(breakpoints), std::move(values)});
}

Integrand Integrand::power(double coefficient, double exponent, double lower, double upper) {
  return Integrand(PowerLaw{coefficient, exponent, lower, upper});
}

Integrand Integrand::power_alpha(double coefficient, double alpha, double lower, double upper) {
  if (!(alpha > 0.0)) throw PreconditionError("power integrand: alpha must be positive");
  return power(coefficient, -1.0 / alpha, lower, upper);
}

Integrand Integrand::parse(const std::string& spec) {
  if (spec == "0" || spec == "zero") return zero();
  if (spec.rfind("pc:", 0) == 0) {
    const std::string body = spec.substr(3);
    const auto semi = body.find(';');
    if (semi == std::string::npos || body.compare(semi + 1, 2, "v=") != 0) {
      throw PreconditionError("integrand spec: expected pc:<breakpoints>;v=<values>");
    }
    return piecewise(parse_list(body.substr(0, semi), "breakpoints"),
                     parse_list(body.substr(semi + 3), "values"));
  }
  if (spec.rfind("pow:", 0) == 0) {
    double c = 1.0, a = 0.0, b = 1.0, exponent = 0.0;
    bool have_exponent = false;
    std::stringstream ss(spec.substr(4));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw PreconditionError("integrand spec: expected key=value, got '" + item + "'");
      const std::string key = item.substr(0, eq);
      const double v = parse_list(item.substr(eq + 1), key).at(0);
      if (key == "c") {
        c = v;
      } else if (key == "a") {
        a = v;
      } else if (key == "b") {
        b = v;
      } else if (key == "alpha" || key == "k") {
        if (have_exponent) throw PreconditionError("integrand spec: give alpha or k, not both");
        if (key == "alpha" && !(v > 0.0)) throw PreconditionError("integrand spec: alpha must be positive");
        exponent = key == "alpha" ? -1.0 / v : v;
        have_exponent = true;
      } else {
        throw PreconditionError("integrand spec: unknown key '" + key + "'");
      }
    }
    if (!have_exponent) throw PreconditionError("integrand spec: pow needs alpha= or k=");
    return power(c, exponent, a, b);
  }
  throw PreconditionError("integrand spec: must start with pc: or pow: ('" + spec + "')");
}

std::string Integrand::spec() const {
  std::string out;
  if (is_piecewise()) {
    const auto& pc = as_piecewise();
    if (pc.values.empty()) return "zero";
    out = "pc:";
    for (std::size_t i = 0; i < pc.breakpoints.size(); ++i) {
      out += (i ? "," : "") + ExtReal(pc.breakpoints[i]).str();
    }
    out += ";v=";
    for (std::size_t i = 0; i < pc.values.size(); ++i) out += (i ? "," : "") + format_double(pc.values[i]);
    return out;
  }
  const auto& pw = as_power();
  return "pow:c=" + format_double(pw.coefficient) + ",k=" + format_double(pw.exponent) +
         ",a=" + format_double(pw.lower) + ",b=" + ExtReal(pw.upper).str();
}

double Integrand::operator()(double x) const {
  if (is_piecewise()) {
    const auto& pc = as_piecewise();
    if (pc.values.empty() || x < pc.breakpoints.front() || x > pc.breakpoints.back()) return 0.0;
    if (x == pc.breakpoints.front()) return pc.values.front();
    const auto it = std::lower_bound(pc.breakpoints.begin(), pc.breakpoints.end(), x);
    return pc.values[static_cast<std::size_t>(it - pc.breakpoints.begin()) - 1];
  }
  const auto& pw = as_power();
  if (!(x > pw.lower) || x > pw.upper) return 0.0;
  return pw.coefficient * std::pow(x, pw.exponent);
}

bool Integrand::is_zero() const {
  if (is_piecewise()) {
    const auto& v = as_piecewise().values;
    return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
  }
  return as_power().coefficient == 0.0;
}

bool Integrand::is_nonnegative() const {
  if (is_piecewise()) {
    const auto& v = as_piecewise().values;
    return std::all_of(v.begin(), v.end(), [](double x) { return x >= 0.0; });
  }
  return as_power().coefficient >= 0.0;
}

bool Integrand::is_bounded() const {
  if (is_piecewise()) return true;
  const auto& pw = as_power();
  if (pw.coefficient == 0.0 || pw.exponent == 0.0) return true;
  if (pw.exponent < 0.0) return pw.lower > 0.0;
  return !std::isinf(pw.upper);
}

ExtReal Integrand::support_measure() const {
  if (is_zero()) return 0.0;
  if (is_piecewise()) {
    const auto& pc = as_piecewise();
    double total = 0.0;
    for (std::size_t i = 0; i < pc.values.size(); ++i) {
      if (pc.values[i] == 0.0) continue;
      if (std::isinf(pc.breakpoints[i + 1])) return ExtReal::infinity();
      total += pc.breakpoints[i + 1] - pc.breakpoints[i];
    }
    return total;
  }
  const auto& pw = as_power();
  if (std::isinf(pw.upper)) return ExtReal::infinity();
  return pw.upper - pw.lower;
}

double Integrand::support_lo() const {
  if (is_piecewise()) {
    const auto& pc = as_piecewise();
    for (std::size_t i = 0; i < pc.values.size(); ++i) {
      if (pc.values[i] != 0.0) return pc.breakpoints[i];
    }
    return 0.0;
  }
  return as_power().lower;
}

double Integrand::support_hi() const {
  if (is_piecewise()) {
    const auto& pc = as_piecewise();
    for (std::size_t i = pc.values.size(); i-- > 0;) {
      if (pc.values[i] != 0.0) return pc.breakpoints[i + 1];
    }
    return 0.0;
  }
  return as_power().upper;
}

ExtReal Integrand::abs_power_integral(double l, double lo, double hi) const {
  if (!(l > 0.0)) throw PreconditionError("abs_power_integral: l must be positive");
  if (is_piecewise()) {
    const auto& pc = as_piecewise();
    double total = 0.0;
    for (std::size_t i = 0; i < pc.values.size(); ++i) {
      if (pc.values[i] == 0.0) continue;
      const double len = overlap(pc.breakpoints[i], pc.breakpoints[i + 1], lo, hi);
      if (len == 0.0) continue;
      if (std::isinf(len)) return ExtReal::infinity();
      total += std::pow(std::fabs(pc.values[i]), l) * len;
    }
    return total;
  }
  const auto& pw = as_power();
  if (pw.coefficient == 0.0) return 0.0;
  const double a = std::max(pw.lower, lo);
  const double b = std::min(pw.upper, hi);
  if (!(b > a)) return 0.0;
  const ExtReal m = monomial_integral(pw.exponent * l, a, b);
  if (!m.is_finite()) return m;
  return std::pow(std::fabs(pw.coefficient), l) * m.value();
}

ExtReal Integrand::power_integral(int l, double lo, double hi) const {
  if (l < 1) throw PreconditionError("power_integral: l must be a positive integer");
  if (is_piecewise()) {
    const auto& pc = as_piecewise();
    ExtReal total = 0.0;
    for (std::size_t i = 0; i < pc.values.size(); ++i) {
      if (pc.values[i] == 0.0) continue;
      const double len = overlap(pc.breakpoints[i], pc.breakpoints[i + 1], lo, hi);
      if (len == 0.0) continue;
      const double v = std::pow(pc.values[i], l);
      total = add(total, std::isinf(len) ? ExtReal(v > 0 ? kInf : -kInf) : ExtReal(v * len));
    }
    return total;
  }
  const ExtReal m = abs_power_integral(l, lo, hi);
  const bool negative = as_power().coefficient < 0.0 && (l % 2 == 1);
  if (!m.is_finite()) return negative ? ExtReal::neg_infinity() : m;
  return negative ? -m.value() : m.value();
}

ExtReal Integrand::level_power_integral(double l, double level, bool above) const {
  if (!(level >= 0.0)) throw PreconditionError("level_power_integral: level must be >= 0");
  if (is_piecewise()) {
    const auto& pc = as_piecewise();
    double total = 0.0;
    for (std::size_t i = 0; i < pc.values.size(); ++i) {
      const double a = std::fabs(pc.values[i]);
      if (a == 0.0 || (a > level) != above) continue;
      const double len = pc.breakpoints[i + 1] - pc.breakpoints[i];
      if (std::isinf(len)) return ExtReal::infinity();
      total += std::pow(a, l) * len;
    }
    return total;
  }
  const auto& pw = as_power();
  const double c = std::fabs(pw.coefficient);
  if (c == 0.0) return 0.0;
  if (pw.exponent == 0.0) {
    return ((c > level) == above) ? abs_power_integral(l) : ExtReal(0.0);
  }
  // |f(x)| > level  <=>  x < x_star (decreasing f) or x > x_star (increasing f).
  const double x_star = level == 0.0 ? (pw.exponent < 0.0 ? kInf : 0.0) : std::pow(level / c, 1.0 / pw.exponent);
  const bool big_below = pw.exponent < 0.0;
  if (big_below == above) return abs_power_integral(l, 0.0, x_star);
  return abs_power_integral(l, x_star, kInf);
}

Integrand Integrand::scaled(double s) const {
  if (!std::isfinite(s)) throw PreconditionError("Integrand::scaled: factor must be finite");
  if (is_piecewise()) {
    PiecewiseConstant pc = as_piecewise();
    for (double& v : pc.values) v *= s;
    return Integrand(std::move(pc));
  }
  PowerLaw pw = as_power();
  pw.coefficient *= s;
  return Integrand(pw);
}

Integrand operator+(const Integrand& f, const Integrand& g) {
  if (!f.is_piecewise() || !g.is_piecewise()) {
    throw PreconditionError("Integrand sum: only piecewise-constant integrands can be added");
  }
  const auto& pf = f.as_piecewise();
  const auto& pg = g.as_piecewise();
  if (pf.values.empty()) return g;
  if (pg.values.empty()) return f;
  std::vector<double> bp(pf.breakpoints);
  bp.insert(bp.end(), pg.breakpoints.begin(), pg.breakpoints.end());
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  std::vector<double> values;
  values.reserve(bp.size() - 1);
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double probe = std::isinf(bp[i + 1]) ? bp[i] + 1.0 : 0.5 * (bp[i] + bp[i + 1]);
    values.push_back(f(probe) + g(probe));
  }
  return Integrand::piecewise(std::move(bp), std::move(values));
}

}  // namespace gammatime
