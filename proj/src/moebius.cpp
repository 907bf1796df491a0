#include "minkowski/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "minkowski/errors.hpp"

namespace minkowski {

namespace {

constexpr double kExactIntegerLimit = 9007199254740992.0;  // 2^53

// Sign of (y - n/d) for d > 0, exact as long as n and d are exact doubles.
int compare_to_fraction(double y, double n, double d) {
  const double residual = std::fma(d, y, -n);
  return (residual > 0) - (residual < 0);
}

}  // namespace

MoebiusMap::MoebiusMap(BigInt a, BigInt b, BigInt c, BigInt d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (determinant() == 0) throw std::invalid_argument("MoebiusMap: degenerate (ad - bc = 0)");
  af_ = a_.get_d();
  bf_ = b_.get_d();
  cf_ = c_.get_d();
  df_ = d_.get_d();
  detf_ = determinant().get_d();
}

Rational MoebiusMap::apply(const Rational& y) const {
  const Rational den = Rational(c_) * y + Rational(d_);
  if (den.sign() == 0) throw PoleError("Moebius pole at y = " + y.str());
  return (Rational(a_) * y + Rational(b_)) / den;
}

QuadraticNumber MoebiusMap::apply(const QuadraticNumber& y) const {
  QuadraticNumber num = y;
  num *= Rational(a_);
  num += Rational(b_);
  QuadraticNumber den = y;
  den *= Rational(c_);
  den += Rational(d_);
  if (den.sign() == 0) throw PoleError("Moebius pole at y = " + y.str());
  return num / den;
}

QuadraticSurd MoebiusMap::apply(const QuadraticSurd& y) const {
  return QuadraticSurd(apply(y.value()));
}

double MoebiusMap::apply(double y) const {
  const double den = cf_ * y + df_;
  if (den == 0.0) throw PoleError("Moebius pole at y = " + std::to_string(y));
  return (af_ * y + bf_) / den;
}

Rational MoebiusMap::derivative(const Rational& y) const {
  const Rational den = Rational(c_) * y + Rational(d_);
  if (den.sign() == 0) throw PoleError("Moebius pole at y = " + y.str());
  return Rational(determinant()) / (den * den);
}

QuadraticNumber MoebiusMap::derivative(const QuadraticNumber& y) const {
  QuadraticNumber den = y;
  den *= Rational(c_);
  den += Rational(d_);
  if (den.sign() == 0) throw PoleError("Moebius pole at y = " + y.str());
  QuadraticNumber result = QuadraticNumber::rational(Rational(determinant()), y.radicand());
  return result / (den * den);
}

double MoebiusMap::derivative(double y) const {
  const double den = cf_ * y + df_;
  if (den == 0.0) throw PoleError("Moebius pole at y = " + std::to_string(y));
  return detf_ / (den * den);
}

std::string MoebiusMap::str() const {
  return "(" + a_.get_str() + "*y+" + b_.get_str() + ")/(" + c_.get_str() + "*y+" + d_.get_str() + ")";
}

bool operator==(const MoebiusMap& f, const MoebiusMap& g) {
  // Proportional iff every 2x2 minor of the stacked coefficient rows vanishes.
  const BigInt* u[4] = {&f.a_, &f.b_, &f.c_, &f.d_};
  const BigInt* v[4] = {&g.a_, &g.b_, &g.c_, &g.d_};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (*u[i] * *v[j] != *u[j] * *v[i]) return false;
    }
  }
  return true;
}

MoebiusMap compose(const MoebiusMap& outer, const MoebiusMap& inner) {
  return {outer.a() * inner.a() + outer.b() * inner.c(), outer.a() * inner.b() + outer.b() * inner.d(),
          outer.c() * inner.a() + outer.d() * inner.c(), outer.c() * inner.b() + outer.d() * inner.d()};
}

// ---------------------------------------------------------------------------

PiecewiseMoebius::PiecewiseMoebius(std::vector<Rational> breakpoints, std::vector<MoebiusMap> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (breakpoints_.size() < 2 || breakpoints_.front() != Rational(0) || breakpoints_.back() != Rational(1)) {
    throw std::invalid_argument("PiecewiseMoebius: breakpoints must run from 0 to 1");
  }
  if (pieces_.size() + 1 != breakpoints_.size()) {
    throw std::invalid_argument("PiecewiseMoebius: need exactly one piece per interval");
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Rational& l = breakpoints_[i];
    const Rational& r = breakpoints_[i + 1];
    if (!(l < r)) throw std::invalid_argument("PiecewiseMoebius: breakpoints not strictly increasing");
    const MoebiusMap& m = pieces_[i];
    if (m.c() != 0) {
      const Rational pole(-m.d(), m.c());
      if (l <= pole && pole <= r) {
        throw std::invalid_argument("PiecewiseMoebius: piece " + std::to_string(i) + " has a pole on its interval");
      }
    }
    for (const Rational& e : {m.apply(l), m.apply(r)}) {
      if (e < Rational(0) || e > Rational(1)) {
        throw std::invalid_argument("PiecewiseMoebius: piece " + std::to_string(i) + " leaves [0,1]");
      }
    }
  }
  float_breaks_.reserve(breakpoints_.size());
  for (const Rational& b : breakpoints_) {
    const double n = b.num().get_d();
    const double d = b.den().get_d();
    if (std::fabs(n) < kExactIntegerLimit && d < kExactIntegerLimit) {
      float_breaks_.emplace_back(n, d);
    } else {
      float_breaks_.emplace_back(b.to_double(), 1.0);
    }
  }
}

PiecewiseMoebius PiecewiseMoebius::identity() {
  return PiecewiseMoebius({Rational(0), Rational(1)}, {MoebiusMap::identity()});
}

std::size_t PiecewiseMoebius::locate(const Rational& y) const {
  if (y < Rational(0) || y > Rational(1)) throw std::domain_error("locate: " + y.str() + " outside [0,1]");
  // First breakpoint strictly greater than y, minus one.
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), y);
  const auto idx = static_cast<std::size_t>(it - breakpoints_.begin());
  return std::min(idx - 1, pieces_.size() - 1);
}

std::size_t PiecewiseMoebius::locate(const QuadraticNumber& y) const {
  if (y.compare(Rational(0)) < 0 || y.compare(Rational(1)) > 0) {
    throw std::domain_error("locate: " + y.str() + " outside [0,1]");
  }
  std::size_t lo = 0;
  std::size_t hi = pieces_.size();  // invariant: breakpoints_[lo] <= y, answer in [lo, hi)
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (y.compare(breakpoints_[mid]) >= 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::size_t PiecewiseMoebius::locate(double y) const {
  if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("locate: " + std::to_string(y) + " outside [0,1]");
  std::size_t lo = 0;
  std::size_t hi = pieces_.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    const auto [n, d] = float_breaks_[mid];
    if (compare_to_fraction(y, n, d) >= 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

PiecewiseMoebius compose(const PiecewiseMoebius& outer, const PiecewiseMoebius& inner) {
  std::vector<Rational> breaks{Rational(0)};
  std::vector<MoebiusMap> pieces;
  const auto& outer_breaks = outer.breakpoints();
  for (std::size_t i = 0; i < inner.branch_count(); ++i) {
    const auto [l, r] = inner.interval(i);
    const MoebiusMap& m = inner.pieces()[i];
    if (!m.increasing()) throw std::invalid_argument("compose: inner piece is not increasing");
    const Rational lo = m.apply(l);
    const Rational hi = m.apply(r);
    const MoebiusMap back = m.inverse();
    std::size_t k = outer.locate(lo);
    for (;;) {
      pieces.push_back(compose(outer.pieces()[k], m));
      ++k;
      if (k >= outer.branch_count() || !(outer_breaks[k] < hi)) break;
      breaks.push_back(back.apply(outer_breaks[k]));
    }
    breaks.push_back(r);
  }
  return PiecewiseMoebius(std::move(breaks), std::move(pieces));
}

SurdOrbit surd_orbit(const PiecewiseMoebius& map, const QuadraticSurd& y0, std::size_t max_steps) {
  if (y0.compare(Rational(0)) < 0 || y0.compare(Rational(1)) > 0) {
    throw std::invalid_argument("surd_orbit: y0 = " + y0.str() + " outside [0,1]");
  }
  std::vector<QuadraticSurd> states{y0};
  std::map<QuadraticSurd, std::size_t, SurdRepresentationLess> seen{{y0, 0}};
  for (std::size_t step = 0; step < max_steps; ++step) {
    QuadraticSurd next = map.apply(states.back());
    const auto it = seen.find(next);
    if (it != seen.end()) {
      const std::size_t start = it->second;
      SurdOrbit orbit;
      orbit.preperiod.assign(states.begin(), states.begin() + static_cast<std::ptrdiff_t>(start));
      orbit.period.assign(states.begin() + static_cast<std::ptrdiff_t>(start), states.end());
      return orbit;
    }
    seen.emplace(next, states.size());
    states.push_back(std::move(next));
  }
  throw NoCycleError("surd_orbit: no cycle within " + std::to_string(max_steps) + " steps from " + y0.str());
}

}  // namespace minkowski
