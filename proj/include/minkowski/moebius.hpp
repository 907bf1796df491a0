#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "minkowski/quadratic.hpp"
#include "minkowski/rational.hpp"

namespace minkowski {

/// Integer Moebius transform y -> (a y + b) / (c y + d) with ad - bc != 0.
class MoebiusMap {
 public:
  MoebiusMap(BigInt a, BigInt b, BigInt c, BigInt d);

  static MoebiusMap identity() { return {1, 0, 0, 1}; }

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& c() const { return c_; }
  const BigInt& d() const { return d_; }
  BigInt determinant() const { return a_ * d_ - b_ * c_; }
  bool increasing() const { return determinant() > 0; }

  // All apply() overloads throw PoleError when c y + d = 0.
  Rational apply(const Rational& y) const;
  QuadraticNumber apply(const QuadraticNumber& y) const;
  QuadraticSurd apply(const QuadraticSurd& y) const;
  double apply(double y) const;

  /// (ad - bc) / (c y + d)^2
  Rational derivative(const Rational& y) const;
  QuadraticNumber derivative(const QuadraticNumber& y) const;
  double derivative(double y) const;

  MoebiusMap inverse() const { return {d_, -b_, -c_, a_}; }

  /// "(a*y+b)/(c*y+d)"
  std::string str() const;

  /// Projective equality: the two coefficient vectors are proportional.
  friend bool operator==(const MoebiusMap& f, const MoebiusMap& g);

 private:
  BigInt a_, b_, c_, d_;
  double af_, bf_, cf_, df_, detf_;
};

/// outer ∘ inner
MoebiusMap compose(const MoebiusMap& outer, const MoebiusMap& inner);

/// Piecewise Moebius self-map of [0,1]. Piece i acts on
/// [breakpoints[i], breakpoints[i+1]); the last piece also owns y = 1.
class PiecewiseMoebius {
 public:
  /// Validates that breakpoints run strictly upward from 0 to 1, that there is
  /// one piece per interval, and that each piece maps its interval into [0,1]
  /// without a pole. Throws std::invalid_argument otherwise.
  PiecewiseMoebius(std::vector<Rational> breakpoints, std::vector<MoebiusMap> pieces);

  static PiecewiseMoebius identity();

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<MoebiusMap>& pieces() const { return pieces_; }
  std::size_t branch_count() const { return pieces_.size(); }
  std::pair<Rational, Rational> interval(std::size_t i) const {
    return {breakpoints_[i], breakpoints_[i + 1]};
  }

  // locate() throws std::domain_error for points outside [0,1].
  std::size_t locate(const Rational& y) const;
  std::size_t locate(const QuadraticNumber& y) const;
  std::size_t locate(double y) const;

  Rational apply(const Rational& y) const { return pieces_[locate(y)].apply(y); }
  QuadraticSurd apply(const QuadraticSurd& y) const { return pieces_[locate(y.value())].apply(y); }
  double apply(double y) const { return pieces_[locate(y)].apply(y); }

  Rational derivative(const Rational& y) const { return pieces_[locate(y)].derivative(y); }
  QuadraticNumber derivative(const QuadraticNumber& y) const {
    return pieces_[locate(y)].derivative(y);
  }
  double derivative(double y) const { return pieces_[locate(y)].derivative(y); }

 private:
  std::vector<Rational> breakpoints_;
  std::vector<MoebiusMap> pieces_;
  // Breakpoints as exact small-integer pairs for fast floating comparisons.
  std::vector<std::pair<double, double>> float_breaks_;
};

/// outer ∘ inner, assembled piece by piece. Every inner piece must be
/// increasing; the result keeps the closed-left/open-right convention.
PiecewiseMoebius compose(const PiecewiseMoebius& outer, const PiecewiseMoebius& inner);

struct SurdOrbit {
  std::vector<QuadraticSurd> preperiod;
  std::vector<QuadraticSurd> period;
};

/// Iterates y -> map(y) exactly until a state repeats. Throws NoCycleError
/// after max_steps iterations without a repeat, std::invalid_argument if y0 is
/// outside [0,1].
SurdOrbit surd_orbit(const PiecewiseMoebius& map, const QuadraticSurd& y0, std::size_t max_steps);

}  // namespace minkowski
