#pragma once

#include <stdexcept>
#include <string>

namespace gammatime {

// Argument outside the mathematical domain of an operation (x <= 0 for E1,
// theta <= -1 for the Gamma exponential martingale, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The caller broke a documented precondition (unsorted jump times, a bracket
// without a sign change, odd p where only even p is supported).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A run configuration names something that does not exist (an unknown
// check in a suite manifest, an unreadable manifest file).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative method or a quadrature did not converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-convergence of a bracketed solver; keeps the last bracket.
class BracketError : public NumericError {
 public:
  BracketError(const std::string& what, double lo, double hi)
      : NumericError(what), lo_(lo), hi_(hi) {}
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

}  // namespace gammatime
