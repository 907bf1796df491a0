#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "minkowski/errors.hpp"
#include "minkowski/operators.hpp"

using namespace minkowski;

namespace {

double half_derivative(double y) { return ShiftMap::farey().factor(y); }

double c_left(double y) { return 1.0 / (3.0 * std::pow(1.0 - y, 3)); }
double c_right(double y) { return 1.0 / (3.0 * y * y * y); }

std::vector<std::complex<double>> eigen_values(const OperatorMatrix& m) {
  Eigen::MatrixXd a(m.dim, m.dim);
  for (std::size_t i = 0; i < m.dim; ++i) {
    for (std::size_t j = 0; j < m.dim; ++j) a(i, j) = m(i, j);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
  std::vector<std::complex<double>> v(solver.eigenvalues().data(), solver.eigenvalues().data() + m.dim);
  std::sort(v.begin(), v.end(), [](auto x, auto y) { return std::abs(x) > std::abs(y); });
  return v;
}

double midpoint_integral(const RealFunction& f, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += f((i + 0.5) / n);
  return s / n;
}

}  // namespace

TEST_CASE("twisted Bernoulli on the eigenvalue-one families") {
  for (int i = 0; i <= 1000; ++i) {
    const double y = i / 1000.0;
    CHECK(apply_twisted_bernoulli(half_derivative, y) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(apply_twisted_bernoulli(c_left, c_right, y) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(apply_twisted_bernoulli([](double) { return 1.0; }, 0.0) == 1.25);
  CHECK(apply_twisted_bernoulli([](double) { return 0.0; }, 0.3) == 0.0);
}

TEST_CASE("completion of the right piece") {
  auto f1 = complete_f1_from_f0(half_derivative);
  for (double y : {0.5, 0.6, 0.75, 0.9, 1.0}) CHECK(f1(y) == doctest::Approx(half_derivative(y)).epsilon(1e-12));
  auto c1 = complete_f1_from_f0(c_left);
  for (double y : {0.5, 0.6, 0.75, 0.9, 1.0}) CHECK(c1(y) == doctest::Approx(c_right(y)).epsilon(1e-12));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double c0 = u(rng), c1c = u(rng), c2 = u(rng), c3 = u(rng);
  RealFunction f0 = [=](double y) { return 2.0 + c0 * std::sin(3 * y) + c1c * y * y + c2 * std::cos(7 * y + c3); };
  RealFunction f1r = complete_f1_from_f0(f0);
  for (int i = 0; i < 100; ++i) {
    const double y = i / 99.0;
    CHECK(apply_twisted_bernoulli(f0, f1r, y) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("GKW operator") {
  const unsigned terms = 2000;
  for (double x : {0.0, 0.1, 0.37, 0.5, 0.99, 1.0}) {
    const double got = apply_gkw([](double y) { return 1.0 / (1.0 + y); }, x, terms);
    CHECK(std::fabs(got - 1.0 / (1.0 + x)) <= gkw_tail_bound(1.0, terms));
  }
  CHECK(apply_gkw([](double) { return 0.0; }, 0.4) == 0.0);
  CHECK_THROWS_AS(apply_gkw([](double) { return 1.0; }, 0.4, 0), std::invalid_argument);
}

TEST_CASE("linearity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealFunction f = [](double y) { return std::exp(y) - 0.3; };
  RealFunction g = [](double y) { return 1.0 / (2.0 + y * y); };
  for (OperatorKind kind : {OperatorKind::TwistedBernoulli, OperatorKind::GKW, OperatorKind::Bernoulli}) {
    const TransferOp op{kind};
    for (int i = 0; i < 50; ++i) {
      const double a = u(rng) * 4 - 2, b = u(rng) * 4 - 2, y = u(rng);
      RealFunction h = [&](double t) { return a * f(t) + b * g(t); };
      const double lhs = op.apply(h, y);
      const double rhs = a * op.apply(f, y) + b * op.apply(g, y);
      CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, std::fabs(rhs)));
    }
  }
}

TEST_CASE("integral preservation") {
  RealFunction f = [](double y) { return 1.0 + 0.5 * std::cos(2 * std::numbers::pi * y) + (y - 0.5) * 0.8; };
  CHECK(midpoint_integral(f, 4000) == doctest::Approx(1.0).epsilon(1e-6));
  for (OperatorKind kind : {OperatorKind::TwistedBernoulli, OperatorKind::GKW, OperatorKind::Bernoulli}) {
    const TransferOp op{kind, 400};
    const double mass = midpoint_integral([&](double y) { return op.apply(f, y); }, 4000);
    CHECK(mass == doctest::Approx(1.0).epsilon(kind == OperatorKind::GKW ? 1e-3 : 1e-5));
  }
}

TEST_CASE("twisted Bernoulli intertwines orbit products") {
  const RealFunction f = [](double y) { return 1.0 + 0.3 * std::sin(2 * std::numbers::pi * y) + 0.1 * y * (1 - y); };
  const unsigned depth = 8;
  for (int i = 0; i < 20; ++i) {
    const double y = (i + 1 / std::numbers::sqrt2) / 20.0;
    const double lhs = apply_twisted_bernoulli([&](double t) { return orbit_product(f, t, depth); }, y);
    const double rhs = orbit_product(f, y, depth - 1) * apply_twisted_bernoulli(f, y);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("question mark density is fixed by both operators") {
  const ShiftMap A = ShiftMap::farey();
  const CoefficientSequence geometric = CoefficientSequence::geometric();
  const unsigned depth = 20;
  for (int i = 0; i < 100; ++i) {
    const double y = (i + 1 / std::numbers::sqrt2) / 101.0;
    const double la = apply_twisted_bernoulli([&](double t) { return product_density(A, t, depth); }, y);
    CHECK(la == doctest::Approx(product_density(A, y, depth - 1)).epsilon(1e-6));
    const double lg = apply_gkw([&](double t) { return gkw_Rf_density(geometric, t, 6); }, y);
    CHECK(lg == doctest::Approx(gkw_Rf_density(geometric, y, 5)).epsilon(1e-9));
  }
}

TEST_CASE("weighted Gauss products") {
  const CoefficientSequence geometric = CoefficientSequence::geometric();
  const CoefficientSequence basel = CoefficientSequence::basel();
  CHECK(geometric.cached_total() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::fabs(basel.cached_total() - 1.0) < 1e-12);
  CHECK_THROWS_AS(gkw_Rf_density(CoefficientSequence::finite({0.5, 0.4}), 0.3, 4), std::invalid_argument);
  CHECK_THROWS_AS(gkw_Rf_density(geometric, 0.0, 4), std::invalid_argument);

  // y = 3/8 = [0;2,1,2]: the first two factors use n = 2 then n = 1.
  const double y = 0.375;
  CHECK(gkw_Rf_density(geometric, y, 2) == doctest::Approx(0.25 / (y * y) * 0.5 / (2.0 / 3.0 * 2.0 / 3.0)));
  CHECK(gkw_Rf_density(geometric, 0.25, 1) == doctest::Approx(1.0 / 16 / 0.0625));
  CHECK(gkw_Rf_density(geometric, 0.25, 2) == 0.0);

  // All weight on n = 1 keeps the product alive only while the orbit stays in (1/2, 1].
  const CoefficientSequence ones = CoefficientSequence::finite({1.0});
  const double golden = (std::sqrt(5.0) - 1) / 2;
  CHECK(gkw_Rf_density(ones, golden, 10) > 0.0);
  CHECK(gkw_Rf_density(ones, 0.4, 3) == 0.0);

  // Depth-matched against the Farey product: Gauss depth N equals Farey depth a_1 + ... + a_N.
  const ShiftMap A = ShiftMap::farey();
  const double x = 0.30625;  // 49/160 = [0;3,3,1,3,3]
  CHECK(gkw_Rf_density(geometric, x, 2) == doctest::Approx(product_density(A, x, 6)).epsilon(1e-9));
}

TEST_CASE("discretizations") {
  const OperatorMatrix b4 = discretize({OperatorKind::Bernoulli}, Basis::Monomial, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(b4(i, i) == std::ldexp(1.0, -static_cast<int>(i)));
    for (std::size_t j = 0; j < i; ++j) CHECK(b4(i, j) == 0.0);
  }
  CHECK(b4(0, 1) == 0.25);
  CHECK(b4(1, 2) == 0.25);

  for (OperatorKind kind : {OperatorKind::TwistedBernoulli, OperatorKind::GKW, OperatorKind::Bernoulli}) {
    const OperatorMatrix cells = discretize({kind}, Basis::Cells, 64);
    for (std::size_t j = 0; j < 64; ++j) CHECK(cells.column_sum(j) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_FALSE(discretize({OperatorKind::GKW}, Basis::Monomial, 24).ill_conditioned);
  CHECK(discretize({OperatorKind::GKW}, Basis::Monomial, 25).ill_conditioned);
  CHECK_THROWS_AS(discretize({OperatorKind::GKW}, Basis::Cells, 1), std::invalid_argument);
  CHECK(parse_basis("chebyshev") == Basis::Chebyshev);
  CHECK(parse_operator_kind("twisted") == OperatorKind::TwistedBernoulli);
  CHECK_THROWS_AS(parse_operator_kind("gauss"), std::invalid_argument);
}

TEST_CASE("Bernoulli spectrum") {
  const auto pairs = spectrum(discretize({OperatorKind::Bernoulli}, Basis::Monomial, 8), 8);
  REQUIRE(pairs.size() == 8);
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK_FALSE(pairs[k].complex_pair);
    CHECK(std::fabs(pairs[k].value - std::ldexp(1.0, -static_cast<int>(k))) < 1e-8);
  }
  CHECK_THROWS_AS(spectrum(discretize({OperatorKind::Bernoulli}, Basis::Monomial, 4), 5), std::invalid_argument);
}

TEST_CASE("spectra agree with a dense eigensolver") {
  struct Case {
    OperatorKind kind;
    Basis basis;
    std::size_t dim, top;
  };
  for (const Case& c : {Case{OperatorKind::GKW, Basis::Chebyshev, 32, 4}, Case{OperatorKind::GKW, Basis::Monomial, 12, 3},
                        Case{OperatorKind::GKW, Basis::Cells, 16, 2}, Case{OperatorKind::TwistedBernoulli, Basis::Cells, 64, 3},
                        Case{OperatorKind::Bernoulli, Basis::Cells, 32, 1}}) {
    CAPTURE(to_string(c.kind));
    CAPTURE(to_string(c.basis));
    const OperatorMatrix m = discretize({c.kind}, c.basis, c.dim);
    const auto ours = spectrum(m, c.top);
    const auto oracle = eigen_values(m);
    for (std::size_t k = 0; k < c.top; ++k) {
      CHECK_FALSE(ours[k].complex_pair);
      CHECK(ours[k].value == doctest::Approx(oracle[k].real()).epsilon(1e-8));
    }
  }
}

TEST_CASE("GKW spectrum") {
  const auto p32 = spectrum(discretize({OperatorKind::GKW}, Basis::Chebyshev, 32), 2);
  const auto p64 = spectrum(discretize({OperatorKind::GKW}, Basis::Chebyshev, 64), 2);
  CHECK(std::fabs(p32[0].value - 1.0) < 1e-6);
  CHECK(std::fabs(p32[1].value - p64[1].value) < 1e-3);
  CHECK(p64[1].value == doctest::Approx(-0.3036630029).epsilon(1e-8));

  const OperatorMatrix m = discretize({OperatorKind::GKW}, Basis::Chebyshev, 32);
  std::vector<double> y;
  for (int i = 0; i < 50; ++i) y.push_back((i + 0.5) / 50);
  const auto samples = sample_eigenvector(m, p32[0].vector, y);
  const double s = samples[0] * (1 + y[0]);
  for (std::size_t i = 0; i < y.size(); ++i) CHECK(samples[i] * (1 + y[i]) == doctest::Approx(s).epsilon(1e-8));

  // Leading eigenvalue is consistent between coarse and finer cell grids.
  for (OperatorKind kind : {OperatorKind::TwistedBernoulli, OperatorKind::GKW, OperatorKind::Bernoulli}) {
    const double l2 = spectrum(discretize({kind}, Basis::Cells, 2), 1)[0].value;
    const double l4 = spectrum(discretize({kind}, Basis::Cells, 4), 1)[0].value;
    CHECK(std::fabs(l2 - l4) < 1e-6);
  }
}

TEST_CASE("digamma") {
  constexpr double euler_gamma = 0.57721566490153286;
  CHECK(digamma(1.0) == doctest::Approx(-euler_gamma).epsilon(1e-14));
  CHECK(digamma(0.5) == doctest::Approx(-euler_gamma - 2 * std::log(2.0)).epsilon(1e-14));
  for (double x : {0.3, 1.7, 9.2, 120.0}) CHECK(digamma(x + 1) - digamma(x) == doctest::Approx(1.0 / x).epsilon(1e-13));
}
