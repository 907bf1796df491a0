#include "minkowski/qmark.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "minkowski/continued_fraction.hpp"

namespace minkowski {

namespace {

BigInt pow2(unsigned long k) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, k);
  return p;
}

void require_unit_interval(const Rational& x, const char* who) {
  if (x < Rational(0) || x > Rational(1)) {
    throw std::domain_error(std::string(who) + ": " + x.str() + " outside [0,1]");
  }
}

// 2 * sum_{k} (-1)^(k+1) 2^-(a_1 + ... + a_k) as acc / 2^(total - 1).
struct DenjoySum {
  BigInt acc = 0;
  unsigned long total = 0;

  void add_terms(const std::vector<BigInt>& terms, std::size_t first_index) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (!terms[i].fits_ulong_p()) throw std::overflow_error("question_mark: partial quotient too large");
      const unsigned long a = terms[i].get_ui();
      acc <<= a;
      acc += ((first_index + i) % 2 == 0) ? 1 : -1;
      total += a;
    }
  }
  Rational value() const {
    if (total == 0) return Rational(0);
    return Rational(acc, pow2(total - 1));
  }
};

}  // namespace

Dyadic::Dyadic(BigInt num, unsigned long exp) : num_(std::move(num)), exp_(exp) {
  if (num_ == 0) {
    exp_ = 0;
  } else {
    const unsigned long twos = std::min<unsigned long>(mpz_scan1(num_.get_mpz_t(), 0), exp_);
    num_ >>= twos;
    exp_ -= twos;
  }
  if (num_ < 0 || num_ > pow2(exp_)) throw std::domain_error("Dyadic: value outside [0,1]");
}

Dyadic Dyadic::from_rational(const Rational& r) {
  const BigInt den = r.den();
  const unsigned long k = mpz_sizeinbase(den.get_mpz_t(), 2) - 1;
  if (den != pow2(k)) throw std::invalid_argument("Dyadic: " + r.str() + " is not dyadic");
  return {r.num(), k};
}

Dyadic Dyadic::parse(std::string_view text) {
  const std::size_t caret = text.find("/2^");
  if (caret != std::string_view::npos) {
    const Rational num = Rational::parse(text.substr(0, caret));
    const std::string_view k_text = text.substr(caret + 3);
    if (!num.is_integer() || k_text.empty() || k_text.find_first_not_of("0123456789") != std::string_view::npos) {
      throw std::invalid_argument("Dyadic: malformed '" + std::string(text) + "'");
    }
    return {num.num(), std::stoul(std::string(k_text))};
  }
  return from_rational(Rational::parse(text));
}

Dyadic Dyadic::from_double(double y) {
  if (!std::isfinite(y)) throw std::domain_error("Dyadic: non-finite value");
  int e = 0;
  const double mantissa = std::frexp(y, &e);
  // y = m * 2^(e - 53) with m an integer of at most 53 bits.
  const double m = std::ldexp(mantissa, 53);
  BigInt num(m);
  const long shift = 53L - e;
  if (shift < 0) throw std::domain_error("Dyadic: value outside [0,1]");
  return {num, static_cast<unsigned long>(shift)};
}

Rational Dyadic::to_rational() const { return {num_, pow2(exp_)}; }

double Dyadic::to_double() const {
  const long bits = static_cast<long>(mpz_sizeinbase(num_.get_mpz_t(), 2));
  if (bits <= 53) return std::ldexp(num_.get_d(), -static_cast<int>(std::min<unsigned long>(exp_, 1 << 20)));
  return to_rational().to_double();
}

std::string Dyadic::str() const { return to_rational().str(); }

std::string Dyadic::power_str() const { return num_.get_str() + "/2^" + std::to_string(exp_); }

Dyadic question_mark(const Rational& x) {
  require_unit_interval(x, "question_mark");
  if (x == Rational(0)) return {};
  if (x == Rational(1)) return {1, 0};
  DenjoySum sum;
  sum.add_terms(cf_expand(x).terms, 0);
  return {sum.acc, sum.total - 1};
}

Rational question_mark_surd(const QuadraticSurd& y) {
  if (y.compare(Rational(0)) < 0 || y.compare(Rational(1)) > 0) {
    throw std::domain_error("question_mark_surd: " + y.str() + " outside [0,1]");
  }
  const ContinuedFraction cf = cf_expand(y);
  DenjoySum head;
  head.add_terms(cf.terms, 0);
  DenjoySum block;
  block.add_terms(cf.period, 0);
  // Each further pass over the period scales the block by (-1)^m 2^-P.
  const Rational ratio = Rational(cf.period.size() % 2 == 0 ? 1 : -1) / Rational(pow2(block.total));
  const Rational head_sign(cf.terms.size() % 2 == 0 ? 1 : -1);
  const Rational head_scale = head_sign / Rational(pow2(head.total));
  return head.value() + head_scale * block.value() / (Rational(1) - ratio);
}

Rational question_mark_inverse(const Dyadic& d) {
  if (d.num() == 0) return Rational(0);
  if (d.exp() == 0) return Rational(1);
  // Binary digits after the point, most significant first; the last is 1.
  const unsigned long k = d.exp();
  std::vector<unsigned long> runs;
  bool bit = false;
  unsigned long run = 0;
  for (unsigned long i = 1; i <= k; ++i) {
    const bool b = mpz_tstbit(d.num().get_mpz_t(), k - i) != 0;
    if (b == bit) {
      ++run;
    } else {
      runs.push_back(run);
      bit = b;
      run = 1;
    }
  }
  runs.push_back(run);
  runs.front() += 1;
  Rational x(0);
  for (auto it = runs.rbegin(); it != runs.rend(); ++it) {
    x = Rational(1) / (Rational(static_cast<long>(*it)) + x);
  }
  return x;
}

double question_mark_float(double x, int depth) {
  if (depth < 1) throw std::invalid_argument("question_mark_float: depth must be >= 1");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("question_mark_float: x outside [0,1]");
  if (x == 0.0 || x == 1.0) return x;
  constexpr double kQuotientLimit = 4503599627370496.0;  // 2^52
  double rest = x;
  double sum = 0.0;
  long total = 0;
  double sign = 2.0;
  for (int k = 0; k < depth && rest > 0.0; ++k) {
    const double inverse = 1.0 / rest;
    if (inverse > kQuotientLimit) break;
    const double a = std::floor(inverse);
    rest = inverse - a;
    total += static_cast<long>(a);
    if (total > 1100) break;
    sum += sign * std::ldexp(1.0, static_cast<int>(-total));
    sign = -sign;
  }
  return sum;
}

double question_mark_inverse_float(double y) {
  if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("question_mark_inverse_float: y outside [0,1]");
  return question_mark_inverse(Dyadic::from_double(y)).to_double();
}

}  // namespace minkowski
