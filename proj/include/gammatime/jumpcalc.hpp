#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gammatime/ext_real.hpp"

namespace gammatime {

class Integrand;

// A finite pure-jump path x_t = sum_n h_n 1{u_n <= t}, starting from 0.
// Times are strictly increasing and nonnegative.  Paths are truncations of
// the series; summability of the full series is the caller's business.
class JumpPath {
 public:
  JumpPath() = default;
  JumpPath(std::vector<double> times, std::vector<double> heights);

  // Sorts by time and merges jumps that share a time.
  static JumpPath from_unsorted(std::vector<double> times, std::vector<double> heights);

  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& heights() const { return heights_; }

  // x_t (right-continuous) and x_{t-}.
  double amass(double t) const;
  double left_limit(double t) const;
  // Delta x_t = x_t - x_{t-}.
  double jump_at(double t) const;
  double total() const { return prefix_.empty() ? 0.0 : prefix_.back(); }
  // x_{u_n} for every jump time, in order.
  const std::vector<double>& partial_sums() const { return prefix_; }

 private:
  std::vector<double> times_;
  std::vector<double> heights_;
  std::vector<double> prefix_;
};

// sum_n h_n f(u_n); a non-finite f(u_n) is a DomainError.
double integrate(const JumpPath& path, const std::function<double(double)>& f);
double integrate(const JumpPath& path, const Integrand& f);

// Heights k_n h_n.
JumpPath compound(const JumpPath& path, std::span<const double> k);

// Path of jumps phi(h_n); phi(0) must be 0.
JumpPath variation(const JumpPath& path, const std::function<double(double)>& phi);

// sum_k phi(x_{t_k} - x_{t_{k-1}}) over a partition grid t_0 < ... < t_m.
double partition_sum(const JumpPath& path, std::span<const double> grid,
                     const std::function<double(double)>& phi);

// Jumps phi(x_{u_n}) - phi(x_{u_n -}) of y = phi(x); amass of the result is
// phi(x_t) - phi(0).
JumpPath compose_smooth(const JumpPath& path, const std::function<double(double)>& phi);

struct Modulated {
  std::function<double(double)> evaluator;  // t -> a(t) x_t
  JumpPath bracket;                         // jumps a(u_n)^2 h_n^2
};

Modulated modulate(const JumpPath& path, std::function<double(double)> a);

// Right-continuous inverse v -> inf{t : x_t > v} of a nondecreasing path.
class InverseFn {
 public:
  InverseFn() = default;
  InverseFn(std::vector<double> thresholds, std::vector<double> plateaus);

  // 0 for v < 0; +inf once v >= total mass.
  ExtReal operator()(double v) const;
  double cap() const { return thresholds_.empty() ? 0.0 : thresholds_.back(); }
  const std::vector<double>& thresholds() const { return thresholds_; }
  const std::vector<double>& plateaus() const { return plateaus_; }

  // The inverse as a jump path in v: a jump of u_1 at v = 0, then jumps of
  // u_{n+1} - u_n at each threshold g_n below the cap.  Inverting this path
  // again gives back the original path on [0, u_last).
  JumpPath as_path() const;
  // Largest jump of the inverse, i.e. the mesh of the plateau times.
  double max_jump() const;

 private:
  std::vector<double> thresholds_;  // distinct partial sums g_n, increasing
  std::vector<double> plateaus_;    // u_n at which x first exceeds g_{n-1}
};

// Heights must be >= 0 (PreconditionError otherwise).
InverseFn rcll_inverse(const JumpPath& path);

// CSV with header "t,h"; '#' lines are comments.  17 significant digits.
void write_path_csv(std::ostream& out, const JumpPath& path, const std::vector<std::string>& header = {});
JumpPath read_path_csv(std::istream& in);
// Sampled evaluation grid with header "t,x".
void write_grid_csv(std::ostream& out, const JumpPath& path, std::span<const double> grid,
                    const std::vector<std::string>& header = {});

}  // namespace gammatime
