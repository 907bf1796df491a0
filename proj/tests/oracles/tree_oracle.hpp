#pragma once

// Question Mark by walking the Stern-Brocot tree: every mediant step halves
// the dyadic interval, and x is found as some mediant after finitely many steps.

#include "minkowski/rational.hpp"

namespace oracle {

inline minkowski::Rational tree_question_mark(const minkowski::Rational& x) {
  using minkowski::Rational;
  if (x == Rational(0) || x == Rational(1)) return x;
  Rational lo(0), hi(1);
  Rational q_lo(0), q_hi(1);
  for (;;) {
    const Rational m = minkowski::mediant(lo, hi);
    const Rational q_m = (q_lo + q_hi) / Rational(2);
    if (x == m) return q_m;
    if (x < m) {
      hi = m;
      q_hi = q_m;
    } else {
      lo = m;
      q_lo = q_m;
    }
  }
}

}  // namespace oracle
