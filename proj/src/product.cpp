#include "minkowski/product.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "minkowski/resource.hpp"

namespace minkowski {

namespace {

Rational R(long p, long q) { return {BigInt(p), BigInt(q)}; }

// Voronoi cells of a strictly increasing grid in [0,1], clipped to [0,1].
std::vector<double> cell_edges(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("density grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) throw std::invalid_argument("density grid leaves [0,1]");
    if (i > 0 && !(grid[i - 1] < grid[i])) throw std::invalid_argument("density grid must be strictly increasing");
  }
  std::vector<double> edges{0.0};
  for (std::size_t i = 1; i < grid.size(); ++i) edges.push_back(0.5 * (grid[i - 1] + grid[i]));
  edges.push_back(1.0);
  return edges;
}

void require_step(double h) {
  if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("step h must satisfy 0 < h < 1");
}

}  // namespace

ShiftMap ShiftMap::farey() {
  return {"farey", PiecewiseMoebius({Rational(0), R(1, 2), Rational(1)},
                                    {MoebiusMap(1, 0, -1, 1), MoebiusMap(2, -1, 1, 0)})};
}

ShiftMap ShiftMap::triadic() {
  return {"3adic", PiecewiseMoebius({Rational(0), R(1, 3), R(2, 3), Rational(1)},
                                    {MoebiusMap(2, 0, -1, 1), MoebiusMap(3, -1, 0, 1), MoebiusMap(3, -2, 1, 0)})};
}

ShiftMap::ShiftMap(std::string name, PiecewiseMoebius map) : name_(std::move(name)), map_(std::move(map)) {
  for (std::size_t i = 0; i < map_.branch_count(); ++i) {
    const auto [l, r] = map_.interval(i);
    const MoebiusMap& m = map_.pieces()[i];
    if (!m.increasing() || m.apply(l) != Rational(0) || m.apply(r) != Rational(1)) {
      throw std::invalid_argument("ShiftMap " + name_ + ": branch " + std::to_string(i) + " is not onto [0,1]");
    }
    max_expansion_ = std::max({max_expansion_, m.derivative(l).to_double(), m.derivative(r).to_double()});
  }
}

PiecewiseMoebius iterate_A(const ShiftMap& map, unsigned k) {
  require_within_cap(pow_saturating(map.branch_count(), k), "branches of the " + std::to_string(k) + "-fold iterate");
  PiecewiseMoebius result = PiecewiseMoebius::identity();
  for (unsigned i = 0; i < k; ++i) result = compose(result, map.map());
  return result;
}

double product_density(const ShiftMap& map, double y, unsigned depth) {
  if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("product_density: y outside [0,1]");
  double p = 1.0;
  for (unsigned k = 0; k < depth; ++k) {
    if (y == 0.0 || y == 1.0) return 0.0;
    p *= map.factor(y);
    y = map.apply(y);
  }
  return p;
}

Rational product_density(const ShiftMap& map, const Rational& y, unsigned depth) {
  if (y < Rational(0) || y > Rational(1)) throw std::domain_error("product_density: y outside [0,1]");
  Rational p(1);
  Rational x = y;
  for (unsigned k = 0; k < depth; ++k) {
    if (x == Rational(0) || x == Rational(1)) return Rational(0);
    p *= map.factor(x);
    x = map.map().apply(x);
  }
  return p;
}

unsigned truncation_depth(double h) {
  require_step(h);
  int e = 0;
  const double m = std::frexp(h, &e);  // h = m 2^e, m in [1/2, 1)
  return static_cast<unsigned>(m == 0.5 ? 1 - e : -e);
}

unsigned resolved_depth(const ShiftMap& map, double h) {
  require_step(h);
  const double d = std::floor(std::log(1.0 / h) / std::log(map.max_expansion()) + 1e-12);
  return std::max(1u, static_cast<unsigned>(d));
}

double potential_V(const Dyadic& y) {
  const Dyadic lower = y.to_rational() > R(1, 2) ? Dyadic::from_rational(Rational(1) - y.to_rational()) : y;
  const Rational x = question_mark_inverse(lower);
  return std::log(2.0) + 2.0 * std::log((Rational(1) - x).to_double());
}

double potential_V(double y) {
  if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("potential_V: y outside [0,1]");
  return potential_V(Dyadic::from_double(y));
}

double kac_potential(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("kac_potential: x outside [0,1]");
  return x <= 0.5 ? -2.0 * x + 0.5 : 2.0 * x - 1.5;
}

DensityProfile gibbs_density(const std::function<double(double)>& potential, const std::vector<double>& y_grid,
                             unsigned depth, std::string label) {
  const std::vector<double> edges = cell_edges(y_grid);
  DensityProfile profile;
  profile.depth = depth;
  profile.map_name = std::move(label);
  profile.y = y_grid;
  profile.value.reserve(y_grid.size());
  double z = 0.0;
  for (std::size_t i = 0; i < y_grid.size(); ++i) {
    double w = question_mark_float(y_grid[i]);
    double energy = 0.0;
    for (unsigned k = 0; k < depth; ++k) {
      energy += potential(w);
      w = 2.0 * w;
      if (w >= 1.0) w -= 1.0;
    }
    const double weight = std::exp(-energy);
    profile.value.push_back(weight);
    z += weight * (edges[i + 1] - edges[i]);
  }
  for (double& v : profile.value) v /= z;
  return profile;
}

DensityProfile kac_gibbs_density(const std::vector<double>& y_grid, unsigned depth) {
  return gibbs_density([](double x) { return kac_potential(x); }, y_grid, depth, "kac");
}

DensityProfile exact_gibbs_density(const std::vector<double>& y_grid, unsigned depth) {
  return gibbs_density([](double x) { return potential_V(x); }, y_grid, depth, "minkowski");
}

CumulativeDensity::CumulativeDensity(const DensityProfile& profile) : edges_(cell_edges(profile.y)) {
  if (profile.value.size() != profile.y.size()) throw std::invalid_argument("CumulativeDensity: malformed profile");
  values_.reserve(edges_.size());
  values_.push_back(0.0);
  for (std::size_t i = 0; i < profile.value.size(); ++i) {
    values_.push_back(values_.back() + profile.value[i] * (edges_[i + 1] - edges_[i]));
  }
}

double CumulativeDensity::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("CumulativeDensity: x outside [0,1]");
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
  if (it == edges_.end()) return values_.back();
  const std::size_t i = static_cast<std::size_t>(it - edges_.begin()) - 1;
  const double t = (x - edges_[i]) / (edges_[i + 1] - edges_[i]);
  return values_[i] + t * (values_[i + 1] - values_[i]);
}

std::string to_string(SurdVerdict v) {
  switch (v) {
    case SurdVerdict::Zero:
      return "zero";
    case SurdVerdict::Infinite:
      return "infinite";
    case SurdVerdict::Boundary:
      return "boundary";
  }
  return "unknown";
}

SurdClass classify_surd(const ShiftMap& map, const QuadraticSurd& y, std::size_t max_steps) {
  if (y.compare(Rational(0)) <= 0 || y.compare(Rational(1)) >= 0) {
    throw std::invalid_argument("classify_surd: " + y.str() + " outside (0,1)");
  }
  const SurdOrbit orbit = surd_orbit(map.map(), y, max_steps);
  const Rational divisor(static_cast<long>(map.branch_count()));
  QuadraticNumber p = QuadraticNumber::rational(Rational(1), y.radicand());
  for (const QuadraticSurd& s : orbit.period) {
    p = p * map.map().derivative(s.value());
    p *= Rational(1) / divisor;
  }
  const int c = p.compare(Rational(1));
  return {c < 0 ? SurdVerdict::Zero : (c > 0 ? SurdVerdict::Infinite : SurdVerdict::Boundary), p, p.to_double(),
          orbit.preperiod.size(), orbit.period.size()};
}

double integrate_density(const ShiftMap& map, double a, double b, double h, std::optional<unsigned> depth) {
  require_step(h);
  if (!(0.0 <= a && a < b && b <= 1.0)) throw std::invalid_argument("integrate_density: need 0 <= a < b <= 1");
  const unsigned d = depth.value_or(truncation_depth(h));
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / h - 1e-9)));
  const double step = (b - a) / static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += product_density(map, a + (static_cast<double>(i) + 0.5) * step, d);
  }
  return sum * step;
}

CumulativeDensity cumulative_product(const ShiftMap& map, double h, std::optional<unsigned> depth) {
  require_step(h);
  const unsigned d = depth.value_or(resolved_depth(map, h));
  const auto n = static_cast<std::size_t>(std::ceil(1.0 / h - 1e-9));
  require_within_cap(n, "integration cells");
  DensityProfile profile;
  profile.depth = d;
  profile.map_name = map.name();
  for (std::size_t i = 0; i < n; ++i) {
    const double y = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    profile.y.push_back(y);
    profile.value.push_back(product_density(map, y, d));
  }
  return CumulativeDensity(profile);
}

SampledFunction qmark3(const std::vector<double>& x_grid, double h) {
  const CumulativeDensity q3 = cumulative_product(ShiftMap::triadic(), h);
  std::vector<double> values;
  values.reserve(x_grid.size());
  for (double x : x_grid) values.push_back(q3(x));
  return {x_grid, std::move(values)};
}

}  // namespace minkowski
