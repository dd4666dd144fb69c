#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "gammatime/ext_real.hpp"
#include "gammatime/integrand.hpp"

namespace gammatime {

// E exp(-theta Gamma f) = exp(-int ln(1 + theta f) dx) for f >= 0, theta >= 0.
// DomainError when the exponent diverges.
double laplace_gamma(const Integrand& f, double theta);

// E exp(i theta Gamma^{(beta)} f)
//   = exp(-int ln(1 + theta^2 f^2) dx / 2 + i beta int arctan(theta f) dx).
std::complex<double> fourier_gamma(const Integrand& f, double theta, double beta);

// Partial Bell polynomial B_{n,k}(x_1, ..., x_{n-k+1}); x may be longer.
double bell_partial(int n, int k, std::span<const double> x);

// m_l = int f^l dx for l = 1..p (MomentVector); DomainError if one diverges.
std::vector<double> levy_moments(const Integrand& f, int p);

// One summand of the moment formula, indexed by a partition of p with
// multiplicities j_l (j[l-1] parts equal to l).
struct MomentTerm {
  std::vector<int> multiplicities;
  double count = 0.0;  // p! / prod(l^{j_l} j_l!), exact up to p = 20
  double value = 0.0;  // count * prod m_l^{j_l}
};

// E(Gamma f)^p from m_1..m_p, as the sum over partitions of p of
// p! / prod(l^{j_l} j_l!) prod m_l^{j_l}.  1 <= p <= 20.
double moments_from_levy(std::span<const double> m, int p);
std::vector<MomentTerm> moment_terms(std::span<const double> m, int p);

// With m_1 = 0 and even p, checks that every term of the moment formula is
// nonnegative; returns false at the first negative term.
bool even_moment_terms_nonnegative(std::span<const double> m, int p);

// Bounds on E(Gamma f)^p for f >= 0 whose support has finite measure c:
//   lower = Gamma(c+p-1)/Gamma(c) lambda f^p,  upper = Gamma(c+p)/Gamma(c) lambda f^p,
// and the Jensen bound Gamma(c+p)/Gamma(c+1) lambda f^p (valid for p >= 1,
// attained by constant f).
struct PnormBounds {
  double lower = 0.0;
  double upper = 0.0;
  double jensen_upper = 0.0;
  double support = 0.0;
};
PnormBounds pnorm_bounds(const Integrand& f, double p);

// Thorin measure of Gamma f for f >= 0 on [0, 1]: the law of 1/f(U).
class ThorinDescriptor {
 public:
  struct Atom {
    double weight;
    double location;  // y = 1 / f
  };

  // Atoms for piecewise-constant f; escaped mass is the measure of {f = 0}.
  static ThorinDescriptor from_atoms(std::vector<Atom> atoms, double escaped_mass);
  // k(y) = int_0^1 e^{-y / f(u)} du by quadrature, for power f.
  static ThorinDescriptor from_integrand(const Integrand& f);

  bool is_atomic() const { return !atoms_.empty() || !integrand_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double escaped_mass() const { return escaped_; }

  // k(y) = E e^{-y / f(U)}.
  double k(double y) const;
  // G(y) = P(1/f(U) <= y).
  double cdf(double y) const;

 private:
  std::vector<Atom> atoms_;
  double escaped_ = 0.0;
  std::shared_ptr<const Integrand> integrand_;
};

ThorinDescriptor thorin_from_integrand(const Integrand& f);

// Necessary condition for complete monotonicity: divided differences of k of
// orders 1..max_order on the grid alternate in sign (up to a small slack).
bool completely_monotone_on_grid(const std::function<double(double)>& k, std::span<const double> grid,
                                 int max_order = 3);

// f(u) = 1 / G^{-1}(u) on [0, 1].  Quantile jumps are located by bisection
// to width 1e-13; a region with no isolated jump is sampled at `cells`
// equal cells.  PreconditionError for an improper cdf.
Integrand integrand_from_thorin(const std::function<double(double)>& cdf, std::size_t cells = 1024);
Integrand integrand_from_thorin(const ThorinDescriptor& d);

// G^{-1}(u) = inf{y > 0 : G(y) >= u}.
double cdf_quantile(const std::function<double(double)>& cdf, double u);

// E R_t^{theta R_t} < inf for the inverse process R: theta < 1, or theta = 1 and t < 1/e.
bool inverse_moment_finite(double theta, double t);

// P(Gamma_x <= t) = int_0^t s^{x-1} e^{-s} ds / Gamma(x), by quadrature.
double gamma_cdf(double shape, double t);

}  // namespace gammatime
