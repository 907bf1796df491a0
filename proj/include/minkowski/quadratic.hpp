#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "minkowski/rational.hpp"

namespace minkowski {

/// Element a + b*sqrt(D) of the real quadratic field Q(sqrt(D)).
///
/// D is reduced to its square-free part on construction, so two numbers
/// built over the same field always share the same radicand. Arithmetic
/// between numbers over different fields is rejected.
class QuadraticNumber {
 public:
  /// Throws std::invalid_argument unless D >= 2 and D is not a perfect square.
  QuadraticNumber(const Rational& a, const Rational& b, const BigInt& radicand);

  static QuadraticNumber rational(const Rational& a, const BigInt& radicand) {
    return QuadraticNumber(a, Rational(0), radicand);
  }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  const BigInt& radicand() const { return d_; }

  bool is_rational() const { return b_.sign() == 0; }
  int sign() const;
  double to_double() const;

  /// Norm a^2 - b^2 D (product with the conjugate).
  Rational norm() const;
  QuadraticNumber conjugate() const { return {a_, -b_, d_, Reduced{}}; }

  /// "(p+q*sqrt(D))/r" when irrational, "p/q" when rational.
  std::string str() const;

  QuadraticNumber& operator+=(const QuadraticNumber& rhs);
  QuadraticNumber& operator-=(const QuadraticNumber& rhs);
  QuadraticNumber& operator*=(const QuadraticNumber& rhs);
  QuadraticNumber& operator/=(const QuadraticNumber& rhs);
  QuadraticNumber& operator+=(const Rational& rhs);
  QuadraticNumber& operator*=(const Rational& rhs);

  friend QuadraticNumber operator+(QuadraticNumber l, const QuadraticNumber& r) { return l += r; }
  friend QuadraticNumber operator-(QuadraticNumber l, const QuadraticNumber& r) { return l -= r; }
  friend QuadraticNumber operator*(QuadraticNumber l, const QuadraticNumber& r) { return l *= r; }
  friend QuadraticNumber operator/(QuadraticNumber l, const QuadraticNumber& r) { return l /= r; }
  QuadraticNumber operator-() const { return {-a_, -b_, d_, Reduced{}}; }

  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y);

  /// Sign of (this - r).
  int compare(const Rational& r) const;

 private:
  friend class QuadraticSurd;
  struct Reduced {};
  QuadraticNumber(Rational a, Rational b, BigInt radicand, Reduced)
      : a_(std::move(a)), b_(std::move(b)), d_(std::move(radicand)) {}
  void require_same_field(const QuadraticNumber& other) const;

  Rational a_;
  Rational b_;
  BigInt d_;
};

/// Irrational quadratic surd (p + q*sqrt(D)) / r in canonical form:
/// D square-free, q != 0, r > 0 and gcd(p, q, r) = 1. Equal values have equal
/// representations, which is what exact cycle detection relies on.
class QuadraticSurd {
 public:
  /// Throws std::invalid_argument if q = 0, r = 0, or D is not a positive
  /// non-square (any of which would make the value rational or undefined).
  QuadraticSurd(const BigInt& p, const BigInt& q, const BigInt& radicand, const BigInt& r);

  /// Throws std::invalid_argument if the number is rational.
  explicit QuadraticSurd(const QuadraticNumber& value);

  /// Parses "(p+q*sqrt(D))/r". Whitespace is ignored; q may carry its own sign
  /// ("(3-1*sqrt(5))/2" or "(3+-1*sqrt(5))/2"). A missing "q*" means q = 1 and a
  /// missing "/r" means r = 1.
  static QuadraticSurd parse(std::string_view text);

  const BigInt& p() const { return p_; }
  const BigInt& q() const { return q_; }
  const BigInt& radicand() const { return d_; }
  const BigInt& r() const { return r_; }

  QuadraticNumber value() const;
  double to_double() const { return value().to_double(); }

  /// Largest integer not exceeding the value, computed exactly.
  BigInt floor() const;

  int compare(const Rational& x) const { return value().compare(x); }

  std::string str() const;

  friend bool operator==(const QuadraticSurd& a, const QuadraticSurd& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.d_ == b.d_ && a.r_ == b.r_;
  }

  /// Lexicographic order on the canonical representation (not on value);
  /// usable as a map key.
  friend std::strong_ordering representation_order(const QuadraticSurd& a, const QuadraticSurd& b);

 private:
  BigInt p_;
  BigInt q_;
  BigInt d_;
  BigInt r_;
};

struct SurdRepresentationLess {
  bool operator()(const QuadraticSurd& a, const QuadraticSurd& b) const {
    return representation_order(a, b) == std::strong_ordering::less;
  }
};

/// Splits n = s^2 * k with k square-free; returns {s, k}.
std::pair<BigInt, BigInt> square_free_decomposition(const BigInt& n);

}  // namespace minkowski
