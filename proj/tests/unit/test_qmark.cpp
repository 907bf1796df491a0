#include <doctest.h>

#include <cmath>
#include <random>

#include "minkowski/qmark.hpp"
#include "minkowski/stern_brocot.hpp"
#include "oracles/tree_oracle.hpp"

using namespace minkowski;

namespace {

Rational R(long p, long q) { return {BigInt(p), BigInt(q)}; }

std::vector<Rational> random_rationals(std::size_t count, long max_den, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < count; ++i) {
    const long q = std::uniform_int_distribution<long>(1, max_den)(rng);
    out.push_back(R(std::uniform_int_distribution<long>(0, q)(rng), q));
  }
  return out;
}

}  // namespace

TEST_CASE("dyadic representation") {
  CHECK(Dyadic(BigInt(6), 4) == Dyadic(BigInt(3), 3));
  CHECK(Dyadic(BigInt(6), 4).power_str() == "3/2^3");
  CHECK(Dyadic::parse("3/2^3").str() == "3/8");
  CHECK(Dyadic::parse("3/8") == Dyadic(BigInt(3), 3));
  CHECK(Dyadic::parse("1") == Dyadic(BigInt(1), 0));
  CHECK(Dyadic::parse("0").str() == "0");
  CHECK_THROWS_AS(Dyadic::parse("1/3"), std::invalid_argument);
  CHECK_THROWS_AS(Dyadic(BigInt(3), 1), std::domain_error);
  CHECK(Dyadic::from_double(0.375) == Dyadic(BigInt(3), 3));
  CHECK(Dyadic::from_double(0.1).to_double() == 0.1);
}

TEST_CASE("question mark examples") {
  CHECK(question_mark(R(1, 2)).str() == "1/2");
  CHECK(question_mark(R(1, 3)).str() == "1/4");
  CHECK(question_mark(R(2, 5)).str() == "3/8");
  CHECK(question_mark(Rational(0)).str() == "0");
  CHECK(question_mark(Rational(1)).str() == "1");
  CHECK_THROWS_AS(question_mark(R(3, 2)), std::domain_error);
}

TEST_CASE("question mark at surds") {
  CHECK(question_mark_surd(QuadraticSurd::parse("(-1+1*sqrt(5))/2")) == R(2, 3));
  CHECK(question_mark_surd(QuadraticSurd::parse("(-1+1*sqrt(2))")) == R(2, 5));
  CHECK(question_mark_surd(QuadraticSurd::parse("(-5+1*sqrt(29))/2")) == R(2, 33));
  CHECK(question_mark_surd(QuadraticSurd::parse("(2-1*sqrt(2))")) == R(3, 5));
  CHECK_THROWS_AS(question_mark_surd(QuadraticSurd::parse("(1+1*sqrt(2))")), std::domain_error);
}

TEST_CASE("surd value agrees with the float sum") {
  for (const char* s : {"(-1+1*sqrt(5))/2", "(-1+1*sqrt(2))", "(-5+1*sqrt(29))/2", "(1+1*sqrt(3))/4"}) {
    const auto y = QuadraticSurd::parse(s);
    CHECK(question_mark_float(y.to_double(), 40) == doctest::Approx(question_mark_surd(y).to_double()).epsilon(1e-11));
  }
}

TEST_CASE("inverse examples") {
  CHECK(question_mark_inverse(Dyadic::parse("1/2")) == R(1, 2));
  CHECK(question_mark_inverse(Dyadic::parse("3/8")) == R(2, 5));
  CHECK(question_mark_inverse(Dyadic::parse("1/4")) == R(1, 3));
  CHECK(question_mark_inverse(Dyadic::parse("0")) == Rational(0));
  CHECK(question_mark_inverse(Dyadic::parse("1")) == Rational(1));
}

TEST_CASE("agreement with the tree-walk oracle") {
  for (const Rational& x : random_rationals(300, 200, 3)) {
    CHECK(question_mark(x).to_rational() == oracle::tree_question_mark(x));
  }
}

TEST_CASE("exact identities on random rationals") {
  for (const Rational& x : random_rationals(1000, 1000000, 5)) {
    const Rational q = question_mark(x).to_rational();
    CHECK(question_mark(Rational(1) - x).to_rational() == Rational(1) - q);
    CHECK(question_mark(x / (Rational(1) + x)).to_rational() == q / Rational(2));
    for (long n = 1; n <= 8; ++n) {
      const Rational lhs = question_mark(Rational(1) / (Rational(n) + x)).to_rational();
      const Rational two_n(BigInt(1) << static_cast<unsigned>(n));
      CHECK(lhs == Rational(2) / two_n - q / two_n);
    }
    CHECK(question_mark_inverse(question_mark(x)) == x);
  }
}

TEST_CASE("inverse then forward is the identity on dyadics") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    const unsigned k = std::uniform_int_distribution<unsigned>(0, 80)(rng);
    BigInt m = 0;
    for (unsigned b = 0; b < k; ++b) m = 2 * m + static_cast<long>(rng() & 1);
    const Dyadic d(m, k);
    CHECK(question_mark(question_mark_inverse(d)) == d);
  }
}

TEST_CASE("monotone on sorted samples") {
  auto xs = random_rationals(400, 5000, 13);
  std::sort(xs.begin(), xs.end());
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i - 1] < xs[i]) CHECK(question_mark(xs[i - 1]) < question_mark(xs[i]));
  }
}

TEST_CASE("tree rows map onto dyadic rows") {
  for (unsigned k = 0; k <= 9; ++k) {
    const auto row = stern_brocot_row(k);
    for (std::size_t j = 0; j < row.size(); ++j) {
      CHECK(question_mark(row[j]) == Dyadic(BigInt(2 * static_cast<long>(j) + 1), k + 1));
    }
  }
}

TEST_CASE("float evaluation") {
  CHECK(question_mark_float(0.5, 1) == 0.5);
  CHECK(question_mark_float(0.5, 30) == 0.5);
  CHECK(question_mark_float(1.0 / 3.0, 1) == 0.25);
  CHECK(question_mark_float(1.0 / 3.0, 20) == 0.25);
  CHECK_THROWS_AS(question_mark_float(0.3, 0), std::invalid_argument);
  for (const Rational& x : random_rationals(100, 1000000, 17)) {
    const double exact = question_mark(x).to_double();
    CHECK(std::fabs(question_mark_float(x.to_double(), 40) - exact) <= std::ldexp(1.0, -40));
  }
  CHECK(question_mark_inverse_float(0.375) == 0.4);
}
