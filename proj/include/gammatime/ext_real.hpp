#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <string>

#include "gammatime/errors.hpp"

namespace gammatime {

// A real number or one of the two infinities.  Divergent modulars, the
// inverse of a path beyond its total mass and degenerate decay fits all
// return this type instead of a large float.
class ExtReal {
 public:
  enum class Kind { finite, pos_inf, neg_inf };

  constexpr ExtReal() = default;
  ExtReal(double v) : value_(v) {  // NOLINT: implicit from finite doubles
    if (std::isnan(v)) throw DomainError("ExtReal: NaN is not an extended real");
    if (std::isinf(v)) {
      kind_ = v > 0 ? Kind::pos_inf : Kind::neg_inf;
      value_ = 0.0;
    }
  }

  static constexpr ExtReal infinity() { return ExtReal(Kind::pos_inf); }
  static constexpr ExtReal neg_infinity() { return ExtReal(Kind::neg_inf); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::finite; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::neg_inf; }

  // Finite value; throws for either infinity.
  double value() const {
    if (!is_finite()) throw DomainError("ExtReal: value() of an infinite quantity");
    return value_;
  }

  // IEEE view, for arithmetic at call sites that accept infinities.
  double as_double() const {
    switch (kind_) {
      case Kind::pos_inf: return std::numeric_limits<double>::infinity();
      case Kind::neg_inf: return -std::numeric_limits<double>::infinity();
      default: return value_;
    }
  }

  // "inf", "-inf" or the shortest 17-digit decimal.
  std::string str() const;

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return a.kind_ == b.kind_ && a.value_ == b.value_;
  }
  friend std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
    return a.as_double() <=> b.as_double();
  }

 private:
  constexpr explicit ExtReal(Kind k) : kind_(k) {}

  Kind kind_ = Kind::finite;
  double value_ = 0.0;
};

std::string format_double(double v);  // %.17g, round-trips exactly

inline std::string ExtReal::str() const {
  switch (kind_) {
    case Kind::pos_inf: return "inf";
    case Kind::neg_inf: return "-inf";
    default: return format_double(value_);
  }
}

}  // namespace gammatime
