#include <doctest.h>

#include <cmath>
#include <random>

#include "minkowski/errors.hpp"
#include "minkowski/product.hpp"
#include "minkowski/stern_brocot.hpp"
#include "oracles/orbit_oracle.hpp"

using namespace minkowski;

namespace {

Rational R(long p, long q) { return {BigInt(p), BigInt(q)}; }

}  // namespace

TEST_CASE("shift maps") {
  const ShiftMap A = ShiftMap::farey();
  const ShiftMap B = ShiftMap::triadic();
  CHECK(A.branch_count() == 2);
  CHECK(B.branch_count() == 3);
  CHECK(A.max_expansion() == 4.0);
  CHECK(B.max_expansion() == 4.5);
  CHECK(A.apply(0.5) == 0.0);
  CHECK(A.factor(0.25) == doctest::Approx(1.0 / (2 * 0.75 * 0.75)));
  CHECK(B.apply(0.5) == doctest::Approx(0.5));
  CHECK(B.factor(0.5) == 1.0);
  CHECK_THROWS_AS(ShiftMap("half", PiecewiseMoebius({Rational(0), Rational(1)}, {MoebiusMap(1, 0, 0, 2)})),
                  std::invalid_argument);
}

TEST_CASE("iterated shift") {
  const ShiftMap A = ShiftMap::farey();
  CHECK(iterate_A(A, 0).branch_count() == 1);
  const PiecewiseMoebius A2 = iterate_A(A, 2);
  CHECK(A2.breakpoints() == std::vector<Rational>{Rational(0), R(1, 3), R(1, 2), R(2, 3), Rational(1)});
  CHECK(A2.pieces()[0] == MoebiusMap(1, 0, -2, 1));
  CHECK(A2.pieces()[1] == MoebiusMap(3, -1, 1, 0));
  CHECK(A2.pieces()[2] == MoebiusMap(2, -1, -1, 1));
  CHECK(A2.pieces()[3] == MoebiusMap(3, -2, 2, -1));
  for (unsigned k = 1; k <= 7; ++k) {
    const PiecewiseMoebius Ak = iterate_A(A, k);
    const auto tree = stern_brocot_rows_through(k - 1);
    CHECK(std::vector<Rational>(Ak.breakpoints().begin() + 1, Ak.breakpoints().end() - 1) == tree);
  }
  CHECK_THROWS_AS(iterate_A(A, 40), ResourceLimitError);
}

TEST_CASE("iterates peel binary digits of ?") {
  const ShiftMap A = ShiftMap::farey();
  std::mt19937 rng(21);
  for (int t = 0; t < 100; ++t) {
    const long q = std::uniform_int_distribution<long>(2, 3000)(rng);
    Rational y = R(std::uniform_int_distribution<long>(1, q - 1)(rng), q);
    const Rational qy = question_mark(y).to_rational();
    for (unsigned k = 1; k <= 6; ++k) {
      y = A.map().apply(y);
      const Rational shifted = qy * Rational(BigInt(1) << k);
      const Rational frac = shifted - Rational(shifted.floor());
      CHECK(y == question_mark_inverse(Dyadic::from_rational(frac)));
    }
  }
}

TEST_CASE("product density at rationals terminates") {
  const ShiftMap A = ShiftMap::farey();
  CHECK(product_density(A, 0.5, 30) == 0.0);
  CHECK(product_density(A, 0.5, 1) == 2.0);
  CHECK(product_density(A, R(1, 2), 40) == Rational(0));
  std::mt19937 rng(5);
  for (int t = 0; t < 200; ++t) {
    const long q = std::uniform_int_distribution<long>(2, 500)(rng);
    const Rational y = R(std::uniform_int_distribution<long>(1, q - 1)(rng), q);
    const unsigned n = static_cast<unsigned>(question_mark(y).exp());
    CHECK(product_density(A, y, n) > Rational(0));
    CHECK(product_density(A, y, n + 1) == Rational(0));
    CHECK(product_density(A, y, n + 7) == Rational(0));
  }
}

TEST_CASE("measure self-similarity at matched depth") {
  const ShiftMap A = ShiftMap::farey();
  for (int i = 1; i < 100; ++i) {
    const double x = (i + 1 / std::sqrt(2.0)) / 101.0;
    const double xp = x / (1 + x);
    for (unsigned d : {5u, 8u, 10u}) {
      const double lhs = product_density(A, xp, d + 1) / ((1 + x) * (1 + x));
      const double rhs = product_density(A, x, d) / 2;
      CHECK(std::fabs(lhs - rhs) <= 1e-9 * std::fabs(rhs));
    }
  }
}

TEST_CASE("measure self-similarity in exact arithmetic") {
  const ShiftMap A = ShiftMap::farey();
  for (long i = 1; i < 40; ++i) {
    const Rational x = R(1000003 * i % 999983, 999983);
    const Rational xp = x / (Rational(1) + x);
    const Rational scale = (Rational(1) + x) * (Rational(1) + x);
    CHECK(product_density(A, xp, 25) / scale == product_density(A, x, 24) / Rational(2));
  }
}

TEST_CASE("truncation and resolved depth") {
  CHECK(truncation_depth(std::ldexp(1.0, -12)) == 12);
  CHECK(truncation_depth(0.5) == 1);
  CHECK(truncation_depth(1e-3) == 9);
  CHECK(truncation_depth(std::nextafter(0.5, 0.0)) == 1);
  CHECK(truncation_depth(std::nextafter(0.25, 1.0)) == 1);
  CHECK_THROWS_AS(truncation_depth(0.0), std::invalid_argument);
  CHECK_THROWS_AS(truncation_depth(1.0), std::invalid_argument);
  CHECK(resolved_depth(ShiftMap::farey(), std::ldexp(1.0, -14)) == 7);
  CHECK(resolved_depth(ShiftMap::triadic(), std::ldexp(1.0, -18)) == 8);
}

TEST_CASE("exact potential") {
  CHECK(potential_V(0.0) == doctest::Approx(std::log(2.0)));
  CHECK(potential_V(1.0) == doctest::Approx(std::log(2.0)));
  CHECK(potential_V(0.5) == doctest::Approx(-std::log(2.0)));
  CHECK(potential_V(0.25) == doctest::Approx(std::log(2.0) + 2 * std::log(2.0 / 3.0)));
  CHECK(potential_V(0.75) == potential_V(0.25));
  CHECK(std::fabs(potential_V(0.25) - kac_potential(0.25)) > 0.1);
  CHECK(kac_potential(0.0) == 0.5);
  CHECK(kac_potential(0.5) == -0.5);
  CHECK(kac_potential(1.0) == 0.5);
}

TEST_CASE("exp(-V) composed with ? is half the branch derivative") {
  const ShiftMap A = ShiftMap::farey();
  for (int i = 1; i < 500; ++i) {
    const Rational y = R(i, 500);
    const double lhs = std::exp(-potential_V(question_mark(y)));
    const double rhs = A.factor(y).to_double();
    CHECK(std::fabs(lhs - rhs) <= 1e-12 * rhs);
  }
}

TEST_CASE("gibbs densities") {
  std::vector<double> grid;
  for (int i = 0; i < 256; ++i) grid.push_back((i + 0.5) / 256);
  const DensityProfile flat = gibbs_density([](double) { return 0.0; }, grid, 6);
  for (double v : flat.value) CHECK(v == doctest::Approx(1.0));
  const DensityProfile exact = exact_gibbs_density(grid, 5);
  const ShiftMap A = ShiftMap::farey();
  double riemann = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    riemann += exact.value[i] / 256;
    CHECK(exact.value[i] == doctest::Approx(product_density(A, grid[i], 5)).epsilon(2e-2));
  }
  CHECK(riemann == doctest::Approx(1.0));
  const DensityProfile kac = kac_gibbs_density(grid, 5);
  const CumulativeDensity cdf(kac);
  CHECK(cdf.total() == doctest::Approx(1.0));
  CHECK(cdf(0.0) == 0.0);
  CHECK_THROWS_AS(kac_gibbs_density({0.5, 0.4}, 3), std::invalid_argument);
}

TEST_CASE("surd classification") {
  const ShiftMap A = ShiftMap::farey();
  const auto golden = QuadraticSurd::parse("(-1+1*sqrt(5))/2");
  const SurdClass g = classify_surd(A, golden);
  CHECK(g.verdict == SurdVerdict::Infinite);
  CHECK(g.period_length == 2);
  CHECK(g.preperiod_length == 0);
  // phi^4 / 4 = (7 + 3 sqrt 5) / 8
  CHECK(g.period_product == QuadraticNumber(R(7, 8), R(3, 8), BigInt(5)));

  const SurdClass s2 = classify_surd(A, QuadraticSurd::parse("(-1+1*sqrt(2))"));
  CHECK(s2.verdict == SurdVerdict::Infinite);
  CHECK(s2.period_length == 4);
  CHECK(s2.period_product == QuadraticNumber(R(17, 16), R(12, 16), BigInt(2)));

  const SurdClass five = classify_surd(A, QuadraticSurd::parse("(-5+1*sqrt(29))/2"));
  CHECK(five.verdict == SurdVerdict::Zero);
  CHECK(five.period_length == 10);

  for (const char* s : {"(-1+1*sqrt(5))/2", "(-1+1*sqrt(2))", "(-5+1*sqrt(29))/2", "(1+1*sqrt(3))/4", "(-3+1*sqrt(13))/2"}) {
    const auto y = QuadraticSurd::parse(s);
    const SurdClass c = classify_surd(A, y);
    const auto o = oracle::farey_orbit_product(static_cast<long double>(y.to_double()));
    CHECK(o.period == c.period_length);
    CHECK(static_cast<double>(o.product) == doctest::Approx(c.period_product_value).epsilon(1e-9));
  }
  CHECK_THROWS_AS(classify_surd(A, QuadraticSurd::parse("(1+1*sqrt(2))")), std::invalid_argument);
  CHECK_THROWS_AS(classify_surd(A, QuadraticSurd::parse("(-5+1*sqrt(29))/2"), 4), NoCycleError);
  CHECK(to_string(SurdVerdict::Zero) == "zero");
}

TEST_CASE("integration of the product density") {
  const ShiftMap A = ShiftMap::farey();
  const double h = std::ldexp(1.0, -12);
  CHECK(integrate_density(A, 0, 1, h, 8) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(integrate_density(A, 0, 0.5, h, 8) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(integrate_density(A, 1.0 / 3, 2.0 / 3, h, 8) == doctest::Approx(0.5).epsilon(2e-3));
  CHECK_THROWS_AS(integrate_density(A, 0.5, 0.5, h), std::invalid_argument);
}

TEST_CASE("3-adic question mark") {
  const double h = std::ldexp(1.0, -16);
  const SampledFunction q3 = qmark3(SampledFunction::uniform_grid(10), h);
  CHECK(q3.values().front() == 0.0);
  CHECK(q3.values().back() == doctest::Approx(1.0).epsilon(1e-3));
  const CumulativeDensity Q = cumulative_product(ShiftMap::triadic(), h);
  for (int i = 1; i <= 9; ++i) {
    const double x = i / 10.0;
    CHECK(std::fabs(Q(x / (2 + x)) - Q(x) / 3) < 1e-3);
    CHECK(std::fabs(Q((x + 1) / 3) - 1.0 / 3 - Q(x) / 3) < 1e-3);
    CHECK(std::fabs(Q(2 / (3 - x)) - 2.0 / 3 - Q(x) / 3) < 1e-3);
  }
}
