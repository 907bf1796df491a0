#include "minkowski/quadratic.hpp"

#include <cmath>
#include <regex>
#include <stdexcept>

namespace minkowski {

namespace {

BigInt isqrt(const BigInt& n) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace

std::pair<BigInt, BigInt> square_free_decomposition(const BigInt& n) {
  if (n <= 0) throw std::invalid_argument("square_free_decomposition: n must be positive");
  BigInt rest = n;
  BigInt square_root = 1;
  if (rest.fits_ulong_p()) {
    unsigned long m = rest.get_ui();
    unsigned long s = 1;
    for (unsigned long f = 2; f <= m / f; ++f) {
      while (m % (f * f) == 0) {
        m /= f * f;
        s *= f;
      }
    }
    return {BigInt(s), BigInt(m)};
  }
  for (BigInt f = 2; f * f <= rest; ++f) {
    const BigInt f2 = f * f;
    while (rest % f2 == 0) {
      rest /= f2;
      square_root *= f;
    }
  }
  return {square_root, rest};
}

// ---------------------------------------------------------------------------
// QuadraticNumber

QuadraticNumber::QuadraticNumber(const Rational& a, const Rational& b, const BigInt& radicand) {
  const auto [s, k] = square_free_decomposition(radicand < 1 ? BigInt(1) : radicand);
  if (radicand < 2 || k == 1) {
    throw std::invalid_argument("QuadraticNumber: radicand must be a positive non-square");
  }
  a_ = a;
  b_ = b * Rational(s);
  d_ = k;
}

void QuadraticNumber::require_same_field(const QuadraticNumber& other) const {
  if (d_ != other.d_) {
    throw std::invalid_argument("QuadraticNumber: mixed radicands " + d_.get_str() + " and " +
                                other.d_.get_str());
  }
}

int QuadraticNumber::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 D. Equality is impossible for D non-square.
  const Rational a2 = a_ * a_;
  const Rational b2d = b_ * b_ * Rational(d_);
  return a2 > b2d ? sa : sb;
}

double QuadraticNumber::to_double() const {
  const double root = std::sqrt(d_.get_d());
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sa == 0 || sb == 0 || sa == sb) return a_.to_double() + b_.to_double() * root;
  // a + b sqrt(D) = (a^2 - b^2 D) / (a - b sqrt(D)), avoiding cancellation.
  const double numerator = norm().to_double();
  return numerator / (a_.to_double() - b_.to_double() * root);
}

Rational QuadraticNumber::norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }

std::string QuadraticNumber::str() const {
  if (is_rational()) return a_.str();
  return QuadraticSurd(*this).str();
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& rhs) {
  require_same_field(rhs);
  a_ += rhs.a_;
  b_ += rhs.b_;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& rhs) {
  require_same_field(rhs);
  a_ -= rhs.a_;
  b_ -= rhs.b_;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& rhs) {
  require_same_field(rhs);
  const Rational a = a_ * rhs.a_ + b_ * rhs.b_ * Rational(d_);
  const Rational b = a_ * rhs.b_ + b_ * rhs.a_;
  a_ = a;
  b_ = b;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& rhs) {
  require_same_field(rhs);
  const Rational n = rhs.norm();
  if (n.sign() == 0) throw std::domain_error("QuadraticNumber: division by zero");
  *this *= rhs.conjugate();
  a_ /= n;
  b_ /= n;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator+=(const Rational& rhs) {
  a_ += rhs;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const Rational& rhs) {
  a_ *= rhs;
  b_ *= rhs;
  return *this;
}

std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y) {
  const int s = (x - y).sign();
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

int QuadraticNumber::compare(const Rational& r) const {
  QuadraticNumber diff = *this;
  diff += -r;
  return diff.sign();
}

// ---------------------------------------------------------------------------
// QuadraticSurd

QuadraticSurd::QuadraticSurd(const BigInt& p, const BigInt& q, const BigInt& radicand, const BigInt& r) {
  if (q == 0) throw std::invalid_argument("QuadraticSurd: q = 0 gives a rational, not a surd");
  if (r == 0) throw std::invalid_argument("QuadraticSurd: r = 0");
  if (radicand < 2) throw std::invalid_argument("QuadraticSurd: radicand must be >= 2");
  const auto [s, k] = square_free_decomposition(radicand);
  if (k == 1) throw std::invalid_argument("QuadraticSurd: radicand is a perfect square");
  p_ = p;
  q_ = q * s;
  d_ = k;
  r_ = r;
  if (r_ < 0) {
    p_ = -p_;
    q_ = -q_;
    r_ = -r_;
  }
  const BigInt g = gcd(gcd(p_, q_), r_);
  if (g > 1) {
    p_ /= g;
    q_ /= g;
    r_ /= g;
  }
}

QuadraticSurd::QuadraticSurd(const QuadraticNumber& value) {
  if (value.is_rational()) {
    throw std::invalid_argument("QuadraticSurd: value " + value.rational_part().str() + " is rational");
  }
  const Rational& a = value.rational_part();
  const Rational& b = value.surd_part();
  r_ = lcm(a.den(), b.den());
  p_ = a.num() * (r_ / a.den());
  q_ = b.num() * (r_ / b.den());
  d_ = value.radicand();
  const BigInt g = gcd(gcd(p_, q_), r_);
  if (g > 1) {
    p_ /= g;
    q_ /= g;
    r_ /= g;
  }
}

QuadraticSurd QuadraticSurd::parse(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (c != ' ' && c != '\t') compact.push_back(c);
  }
  static const std::regex pattern(
      R"(^\(([+-]?\d+)([+-])(?:([+-]?\d+)\*)?sqrt\((\d+)\)\)(?:/([+-]?\d+))?$)");
  std::smatch m;
  if (!std::regex_match(compact, m, pattern)) {
    throw std::invalid_argument("malformed surd '" + std::string(text) +
                                "', expected (p+q*sqrt(D))/r");
  }
  auto integer = [](const std::string& s) { return BigInt(s[0] == '+' ? s.substr(1) : s, 10); };
  const BigInt p = integer(m[1].str());
  BigInt q = m[3].matched ? integer(m[3].str()) : BigInt(1);
  if (m[2].str() == "-") q = -q;
  const BigInt d = integer(m[4].str());
  const BigInt r = m[5].matched ? integer(m[5].str()) : BigInt(1);
  return QuadraticSurd(p, q, d, r);
}

QuadraticNumber QuadraticSurd::value() const {
  return QuadraticNumber(Rational(p_, r_), Rational(q_, r_), d_, QuadraticNumber::Reduced{});
}

BigInt QuadraticSurd::floor() const {
  // q sqrt(D) lies strictly between consecutive integers n and n+1; since r > 0,
  // floor((p + q sqrt D) / r) = floor((p + n) / r).
  const BigInt s = isqrt(q_ * q_ * d_);
  const BigInt n = q_ > 0 ? BigInt(p_ + s) : BigInt(p_ - s - 1);
  return floor_div(n, r_);
}

std::string QuadraticSurd::str() const {
  std::string out = "(" + p_.get_str();
  if (q_ < 0) {
    out += "-" + BigInt(-q_).get_str();
  } else {
    out += "+" + q_.get_str();
  }
  out += "*sqrt(" + d_.get_str() + "))/" + r_.get_str();
  return out;
}

std::strong_ordering representation_order(const QuadraticSurd& a, const QuadraticSurd& b) {
  auto three_way = [](const BigInt& x, const BigInt& y) {
    const int c = cmp(x, y);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  };
  if (auto c = three_way(a.d_, b.d_); c != 0) return c;
  if (auto c = three_way(a.r_, b.r_); c != 0) return c;
  if (auto c = three_way(a.q_, b.q_); c != 0) return c;
  return three_way(a.p_, b.p_);
}

}  // namespace minkowski
