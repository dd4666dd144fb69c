#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gammatime/ext_real.hpp"
#include "gammatime/integrand.hpp"

namespace gammatime {

// The function phi of a modular Phi(f) = int phi(|f|) dx.
class ModularKind {
 public:
  enum class Kind { phi0_min, phi0_ratio, phi0_exp, phi0_arctan, phi1, phi2, phi1_squared, custom };

  static ModularKind phi0_min() { return ModularKind(Kind::phi0_min); }        // u ^ 1
  static ModularKind phi0_ratio() { return ModularKind(Kind::phi0_ratio); }    // u / (1 + u)
  static ModularKind phi0_exp() { return ModularKind(Kind::phi0_exp); }        // 1 - e^{-u}
  static ModularKind phi0_arctan() { return ModularKind(Kind::phi0_arctan); }  // arctan u
  static ModularKind phi1() { return ModularKind(Kind::phi1); }                // ln(1 + u)
  static ModularKind phi2() { return ModularKind(Kind::phi2); }                // ln(1 + u^2) / 2
  static ModularKind phi1_squared() { return ModularKind(Kind::phi1_squared); }  // ln(1 + u^2)
  // Spot-checks phi(0) = 0, phi >= 0, monotonicity and the (a+b) inequality
  // on a grid; throws PreconditionError on failure.
  static ModularKind custom(std::function<double(double)> phi, std::string name = "custom");
  static ModularKind parse(const std::string& name);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  double operator()(double u) const;

 private:
  explicit ModularKind(Kind k);
  Kind kind_;
  std::string name_;
  std::function<double(double)> fn_;
};

// int g(|f(x)|) dx (or int g(f(x)) dx when `absolute` is false) for g with
// g(0) = 0: exact for piecewise-constant f, adaptive quadrature with
// divergence detection for power f.
ExtReal functional_integral(const Integrand& f, const std::function<double(double)>& g, bool absolute = true);

ExtReal modular_value(const ModularKind& phi, const Integrand& f);

// inf{c > 0 : Phi(f / c) <= c}; +inf when no finite c qualifies.
ExtReal f_norm(const ModularKind& phi, const Integrand& f, double tol_rel = 1e-13);

// a phi_i(b u) <= phi_j(u) on every grid point.
bool equivalence_witness(const ModularKind& phi_i, const ModularKind& phi_j, double a, double b,
                         std::span<const double> grid);

// Geometric grid u = 10^{-6} .. 10^{6}, the default for witness searches.
std::vector<double> default_modular_grid(std::size_t points = 241);

// Searches a, b in {2^0, 2^{-1}, ..., 2^{-20}} with b <= a for a witness;
// returns the pair with the largest a, then the largest b.
std::optional<std::pair<double, double>> find_equivalence_constants(const ModularKind& phi_i,
                                                                     const ModularKind& phi_j,
                                                                     std::span<const double> grid);

enum class Integrability { integrable, not_integrable, boundary };
std::string to_string(Integrability v);

// Membership of f in the domain of the Gamma integral with skewness beta:
// Phi_1(f) < inf for beta != 0, Phi_2(f) < inf for beta = 0.  Tested at
// scale 1 only; ln(1 + x) grows so slowly that Phi(f / c) and Phi(f) are
// finite together.  A quadrature failure gives `boundary`.
Integrability gamma_integrable(const Integrand& f, double beta);

// E|Gamma f|^p < inf  iff  int |f| 1{|f| <= c} < inf and int |f|^p 1{|f| > c} < inf.
bool p_moment_exists(const Integrand& f, double p, double c = 1.0);

// K(theta) = E ln(1 + 2 theta^2 Z^2) / 2 against the Gaussian density:
// Gauss-Hermite from 64 nodes, doubled until the change is below 1e-10, for
// theta <= 4; adaptive quadrature of the same Gaussian integral above.
double qv_kernel_gaussian(double theta);
// The same kernel as int_0^inf (1 - e^{-x^2 theta^2}) e^{-x} / x dx.
double qv_kernel_direct(double theta);

// int K(f(x)) dx, the Laplace exponent of the quadratic variation [Gamma] f.
ExtReal qv_modular(const Integrand& f);
// Same integral built on qv_kernel_direct, for cross-checks.
ExtReal qv_modular_direct(const Integrand& f);

// For the Gamma Levy measure nu(dx) = e^{-x}/x dx:
double cosine_functional(double u);  // int (1 - cos ux) nu(dx) = ln(1 + u^2) / 2
double sine_functional(double u);    // |int sin(ux) nu(dx)| = arctan u
double cosine_dominating_bound(double u);  // 2 int ((ux)^2 ^ 1) nu(dx)
double sine_dominating_bound(double u);    // int (ux ^ 1) nu(dx)

}  // namespace gammatime
