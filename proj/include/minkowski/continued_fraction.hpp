#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "minkowski/quadratic.hpp"
#include "minkowski/rational.hpp"

namespace minkowski {

/// [a0; terms..., (period...)]. An empty period means a finite expansion.
/// Canonical form: all terms >= 1, and a finite expansion never ends in 1.
struct ContinuedFraction {
  BigInt a0 = 0;
  std::vector<BigInt> terms;
  std::vector<BigInt> period;

  bool is_periodic() const { return !period.empty(); }

  /// Throws std::invalid_argument if the expansion is not canonical.
  void validate() const;

  /// "[a0]", "[a0;a1,a2]" or "[a0;a1,(p1,p2)]".
  std::string str() const;
  static ContinuedFraction parse(std::string_view text);

  friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};

ContinuedFraction cf_expand(const Rational& x);

/// Eventually periodic expansion of a surd, found by exact cycle detection on
/// the complete quotients. Throws NoCycleError after max_steps quotients.
ContinuedFraction cf_expand(const QuadraticSurd& x, std::size_t max_steps = 100000);

/// Exact value: Rational for finite expansions, QuadraticSurd for periodic
/// ones. Throws std::invalid_argument if the period has no fixed point in [0,1].
std::variant<Rational, QuadraticSurd> cf_value(const ContinuedFraction& cf);

}  // namespace minkowski
