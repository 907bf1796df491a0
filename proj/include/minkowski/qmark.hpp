#pragma once

#include <string>
#include <string_view>

#include "minkowski/quadratic.hpp"
#include "minkowski/rational.hpp"

namespace minkowski {

/// Dyadic rational num / 2^exp in [0,1], stored reduced (num odd or exp = 0).
class Dyadic {
 public:
  Dyadic() = default;
  /// Throws std::domain_error if the value lies outside [0,1].
  Dyadic(BigInt num, unsigned long exp);

  /// Accepts "m/2^k", "m/d" with d a power of two, or "m".
  static Dyadic parse(std::string_view text);
  /// Exact value of a finite double in [0,1].
  static Dyadic from_double(double y);
  /// Throws std::invalid_argument when the denominator is not a power of two.
  static Dyadic from_rational(const Rational& r);

  const BigInt& num() const { return num_; }
  unsigned long exp() const { return exp_; }

  Rational to_rational() const;
  double to_double() const;

  /// "m/d" ("0" and "1" at the endpoints).
  std::string str() const;
  /// "m/2^k".
  std::string power_str() const;

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    return a.to_rational() <=> b.to_rational();
  }

 private:
  BigInt num_ = 0;
  unsigned long exp_ = 0;
};

/// Denjoy's alternating sum over the continued fraction of x, exact.
/// Throws std::domain_error outside [0,1].
Dyadic question_mark(const Rational& x);

/// Exact rational value at a quadratic surd in [0,1], summing the periodic
/// tail as a geometric series.
Rational question_mark_surd(const QuadraticSurd& y);

/// The rational x with question_mark(x) = d.
Rational question_mark_inverse(const Dyadic& d);

/// Denjoy sum over at most `depth` partial quotients of the floating
/// continued fraction of x. Throws std::invalid_argument if depth < 1.
double question_mark_float(double x, int depth = 64);

/// Inverse at a double, evaluated exactly on the double's dyadic value.
double question_mark_inverse_float(double y);

}  // namespace minkowski
