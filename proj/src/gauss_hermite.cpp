#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "gammatime/errors.hpp"
#include "gammatime/quadrature.hpp"

namespace gammatime {

namespace {

// Golub-Welsch eigenvalues (no eigenvectors, which would cost O(n^3)), then
// Newton polish on the orthonormal recurrence and Christoffel weights
// w_i = 1 / sum_k p_k(x_i)^2 accumulated with running rescaling.
GaussHermiteRule build_rule(std::size_t n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  Eigen::VectorXd sub(static_cast<Eigen::Index>(n > 0 ? n - 1 : 0));
  for (std::size_t k = 1; k < n; ++k) sub[static_cast<Eigen::Index>(k - 1)] = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("gauss_hermite_rule: eigensolver failed");

  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double log_sqrt_pi = 0.5 * std::log(M_PI);
  for (std::size_t i = 0; i < n; ++i) {
    double x = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
    double log_sum = 0.0;
    for (int pass = 0; pass < 3; ++pass) {
      // q_k = p_k * pi^{1/4}; q_0 = 1.
      double q_prev = 0.0;
      double q = 1.0;
      double sum = 1.0;
      double log_scale = 0.0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        const double next = x * std::sqrt(2.0 / (k + 1)) * q - std::sqrt(static_cast<double>(k) / (k + 1)) * q_prev;
        q_prev = q;
        q = next;
        sum += q * q;
        if (std::fabs(q) > 1e150) {
          q *= 1e-150;
          q_prev *= 1e-150;
          sum *= 1e-300;
          log_scale += 300.0 * std::log(10.0);
        }
      }
      log_sum = std::log(sum) + log_scale - log_sqrt_pi;
      if (pass == 2) break;
      const double q_n = x * std::sqrt(2.0 / n) * q - std::sqrt((n - 1.0) / n) * q_prev;
      x -= q_n / (std::sqrt(2.0 * n) * q);
    }
    rule.nodes[i] = x;
    rule.weights[i] = std::exp(-log_sum);
  }
  return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite_rule(std::size_t n) {
  if (n == 0) throw PreconditionError("gauss_hermite_rule: n must be positive");
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<GaussHermiteRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_unique<GaussHermiteRule>(build_rule(n))).first;
  }
  return *it->second;
}

double gaussian_expectation(const std::function<double(double)>& g, std::size_t n) {
  const GaussHermiteRule& rule = gauss_hermite_rule(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rule.weights[i] == 0.0) continue;
    sum += rule.weights[i] * g(M_SQRT2 * rule.nodes[i]);
  }
  return sum / std::sqrt(M_PI);
}

}  // namespace gammatime
