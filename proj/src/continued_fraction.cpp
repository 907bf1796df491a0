#include "minkowski/continued_fraction.hpp"

#include <cctype>
#include <map>
#include <stdexcept>

#include "minkowski/errors.hpp"
#include "minkowski/moebius.hpp"

namespace minkowski {

namespace {

// w -> 1 / (a + w)
MoebiusMap reciprocal_shift(const BigInt& a) { return {0, 1, 1, a}; }

MoebiusMap chain(const std::vector<BigInt>& terms) {
  MoebiusMap m = MoebiusMap::identity();
  for (const BigInt& a : terms) m = compose(m, reciprocal_shift(a));
  return m;
}

std::string join(const std::vector<BigInt>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += xs[i].get_str();
  }
  return out;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("continued fraction: empty term in '" + std::string(whole) + "'");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("continued fraction: bad term in '" + std::string(whole) + "'");
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) {
      throw std::invalid_argument("continued fraction: bad term in '" + std::string(whole) + "'");
    }
  }
  return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
}

std::vector<BigInt> parse_list(std::string_view s, std::string_view whole) {
  std::vector<BigInt> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = s.find(',', start);
    out.push_back(parse_integer(s.substr(start, comma - start), whole));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

void ContinuedFraction::validate() const {
  for (const BigInt& t : terms) {
    if (t < 1) throw std::invalid_argument("continued fraction: terms must be >= 1");
  }
  for (const BigInt& t : period) {
    if (t < 1) throw std::invalid_argument("continued fraction: period terms must be >= 1");
  }
  if (period.empty() && !terms.empty() && terms.back() == 1) {
    throw std::invalid_argument("continued fraction: finite expansion may not end in 1");
  }
}

std::string ContinuedFraction::str() const {
  std::string out = "[" + a0.get_str();
  if (!terms.empty() || !period.empty()) out += ';';
  out += join(terms);
  if (!period.empty()) {
    if (!terms.empty()) out += ',';
    out += "(" + join(period) + ")";
  }
  return out + "]";
}

ContinuedFraction ContinuedFraction::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.size() < 3 || s.front() != '[' || s.back() != ']') {
    throw std::invalid_argument("continued fraction: expected '[a0;a1,...]', got '" + std::string(text) + "'");
  }
  const std::string_view body = std::string_view(s).substr(1, s.size() - 2);
  ContinuedFraction cf;
  const std::size_t semi = body.find(';');
  cf.a0 = parse_integer(body.substr(0, semi), text);
  if (semi != std::string_view::npos) {
    std::string_view rest = body.substr(semi + 1);
    const std::size_t open = rest.find('(');
    if (open != std::string_view::npos) {
      if (rest.back() != ')' || rest.find(')') != rest.size() - 1) {
        throw std::invalid_argument("continued fraction: period must close the expansion in '" +
                                    std::string(text) + "'");
      }
      cf.period = parse_list(rest.substr(open + 1, rest.size() - open - 2), text);
      rest = rest.substr(0, open);
      if (!rest.empty()) {
        if (rest.back() != ',') throw std::invalid_argument("continued fraction: missing ',' before period");
        rest.remove_suffix(1);
      }
    }
    if (!rest.empty()) cf.terms = parse_list(rest, text);
  }
  cf.validate();
  return cf;
}

ContinuedFraction cf_expand(const Rational& x) {
  ContinuedFraction cf;
  BigInt num = x.num();
  BigInt den = x.den();
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  cf.a0 = q;
  num -= q * den;
  while (num != 0) {
    // (num/den) -> den/num
    std::swap(num, den);
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    cf.terms.push_back(q);
    num -= q * den;
  }
  return cf;
}

ContinuedFraction cf_expand(const QuadraticSurd& x, std::size_t max_steps) {
  ContinuedFraction cf;
  cf.a0 = x.floor();
  QuadraticNumber rest = x.value();
  rest += Rational(-cf.a0);
  const QuadraticNumber one = QuadraticNumber::rational(Rational(1), x.radicand());

  std::vector<BigInt> quotients;
  std::map<QuadraticSurd, std::size_t, SurdRepresentationLess> seen;
  for (std::size_t step = 0; step < max_steps; ++step) {
    const QuadraticSurd complete(one / rest);
    const auto [it, inserted] = seen.emplace(complete, quotients.size());
    if (!inserted) {
      const auto start = static_cast<std::ptrdiff_t>(it->second);
      cf.terms.assign(quotients.begin(), quotients.begin() + start);
      cf.period.assign(quotients.begin() + start, quotients.end());
      return cf;
    }
    const BigInt a = complete.floor();
    quotients.push_back(a);
    rest = complete.value();
    rest += Rational(-a);
  }
  throw NoCycleError("cf_expand: no period within " + std::to_string(max_steps) + " terms for " + x.str());
}

std::variant<Rational, QuadraticSurd> cf_value(const ContinuedFraction& cf) {
  cf.validate();
  const MoebiusMap head = compose(MoebiusMap{1, cf.a0, 0, 1}, chain(cf.terms));
  if (!cf.is_periodic()) {
    // The tail of a finite expansion is 0 (1/(a_n + 0) closes the last term).
    return head.apply(Rational(0));
  }
  // Purely periodic tail w = M(w): c w^2 + (d - a) w - b = 0.
  const MoebiusMap m = chain(cf.period);
  const BigInt qa = m.c();
  const BigInt qb = m.d() - m.a();
  const BigInt qc = -m.b();
  const BigInt disc = qb * qb - 4 * qa * qc;
  if (qa == 0 || disc <= 0 || mpz_perfect_square_p(disc.get_mpz_t())) {
    throw std::invalid_argument("cf_value: period " + cf.str() + " has no irrational fixed point");
  }
  for (int sign : {1, -1}) {
    const QuadraticSurd w(-qb, BigInt(sign), disc, 2 * qa);
    if (w.compare(Rational(0)) >= 0 && w.compare(Rational(1)) <= 0) return head.apply(w);
  }
  throw std::invalid_argument("cf_value: period " + cf.str() + " has no fixed point in [0,1]");
}

}  // namespace minkowski
