#include "minkowski/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace minkowski {

namespace {

BigInt parse_integer(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw std::invalid_argument("empty integer");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("malformed integer: " + s);
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed integer: " + s);
  }
  if (s[0] == '+') s.erase(s.begin());
  return BigInt(s, 10);
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  return Rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

BigInt Rational::floor() const {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

double Rational::to_double() const {
  const mpz_class& n = value_.get_num();
  const mpz_class& d = value_.get_den();
  if (n == 0) return 0.0;
  const long nbits = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
  const long dbits = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
  if (nbits <= 53 && dbits <= 53) return n.get_d() / d.get_d();
  // Scale so the integer quotient carries at least 64 significant bits, fold
  // any remainder into a sticky bit, and let the final conversion round.
  const long shift = 66 - (nbits - dbits);
  mpz_class a = abs(n);
  mpz_class b = d;
  if (shift >= 0) {
    a <<= static_cast<mp_bitcnt_t>(shift);
  } else {
    b <<= static_cast<mp_bitcnt_t>(-shift);
  }
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  const long extra = static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2)) - 64;
  bool sticky = r != 0;
  if (extra > 0) {
    if (mpz_scan1(q.get_mpz_t(), 0) < static_cast<mp_bitcnt_t>(extra)) sticky = true;
    q >>= static_cast<mp_bitcnt_t>(extra);
  }
  std::uint64_t top = 0;
  mpz_export(&top, nullptr, -1, sizeof top, 0, 0, q.get_mpz_t());
  if (sticky) top |= 1;
  const double magnitude = std::ldexp(static_cast<double>(top), static_cast<int>(std::max(extra, 0L) - shift));
  return sgn(n) < 0 ? -magnitude : magnitude;
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.sign() == 0) throw std::domain_error("Rational: division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  r.value_ = -value_;
  return r;
}

Rational mediant(const Rational& a, const Rational& b) {
  return Rational(a.num() + b.num(), a.den() + b.den());
}

}  // namespace minkowski
