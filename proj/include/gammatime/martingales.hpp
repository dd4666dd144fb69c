#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gammatime/jumpcalc.hpp"

namespace gammatime {

// Exponential martingale family: gamma needs theta > -1, symmetric |theta| < 1.
class MartingaleKind {
 public:
  enum class Kind { gamma, symmetric };

  static MartingaleKind gamma(double theta);
  static MartingaleKind symmetric(double theta);
  static MartingaleKind parse(const std::string& name, double theta);

  Kind kind() const { return kind_; }
  double theta() const { return theta_; }
  std::string name() const { return kind_ == Kind::gamma ? "gamma" : "symmetric"; }

 private:
  MartingaleKind(Kind k, double theta) : kind_(k), theta_(theta) {}
  Kind kind_;
  double theta_;
};

// gamma: (1+theta)^t e^{-theta x};  symmetric: (1-theta^2)^{t/2} e^{-theta x}.
// Evaluated in log space.
double exp_martingale(const MartingaleKind& kind, double t, double path_value);
double log_exp_martingale(const MartingaleKind& kind, double t, double path_value);

// Base c_p with E M_t^p = c_p^t:
//   gamma (1+theta)^p / (1+p theta), needs p theta > -1;
//   symmetric ((1-theta^2)^p / (1-p^2 theta^2))^{1/2}, needs |p theta| < 1.
double pth_moment_base(const MartingaleKind& kind, double p);

// (t)_j = t (t-1) ... (t-j+1).
double falling_factorial(double t, int j);
// C(t, j) = (t)_j / j! for real t.
double real_binomial(double t, int j);

// Coefficients of P_n (gamma) or P~_n (symmetric) in descending powers of
// x: entry i multiplies x^{n-i}.  1 <= n <= 8.
//   P_n  = sum_j (-1)^j C(n,j) (t)_j x^{n-j}
//   P~_n = sum_{2j <= n} (-1)^j C(n,2j) C(t/2,j) (2j)! x^{n-2j}
std::vector<double> poly_martingale_coefficients(MartingaleKind::Kind kind, int n, double t);
double poly_martingale(MartingaleKind::Kind kind, int n, double t, double path_value);

// Gamma(t+k) e^x / (x+theta)^{t+k}; mean (k-1)!/theta^k.
double laplace_martingale(double t, double theta, double path_value, int k = 1);

// b_theta = (1+theta)^2 / (1+2 theta), theta > -1/2; E M_t^2 = b_theta^t.
double oblique_bracket_base(double theta);
// (ln b_theta) b_theta^t, the rate of the oblique bracket.
double oblique_bracket_rate(double theta, double t);

// 2 * mean over inner_reps draws S'_t of sinh(s - S'_t) / (s - S'_t), with
// sinh(0)/0 = 1.  S'_t is the symmetric Gamma variable (N = terms series).
double sinh_martingale(double t, double s_value, std::size_t inner_reps, std::uint64_t seed,
                       std::size_t terms = 200);

// Pathwise check of dM = -theta M_- dGamma + ln(1+theta) M_- dt on a grid for
// M_t = (1+theta)^t e^{-theta x_t}.
struct SdeResidual {
  // Exact jump form: M_t - M_0 against the left Riemann sum of the drift plus
  // the jumps M_{u-}(e^{-theta h} - 1).  O(mesh).
  double drift = 0.0;
  // sum (Delta M)^2 against sum M_{u-}^2 (e^{-theta h} - 1)^2; zero up to rounding.
  double bracket = 0.0;
  // The same two identities with linearised jumps -theta M_- h and
  // theta^2 M_-^2 h^2; these carry an O(h^2) error per jump that does not
  // shrink with the mesh.
  double drift_linearized = 0.0;
  double bracket_linearized = 0.0;
};
SdeResidual exp_martingale_sde_residual(const JumpPath& path, double theta, std::span<const double> t_grid);

}  // namespace gammatime
