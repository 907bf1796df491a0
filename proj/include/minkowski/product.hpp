#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "minkowski/moebius.hpp"
#include "minkowski/qmark.hpp"
#include "minkowski/quadratic.hpp"
#include "minkowski/rational.hpp"
#include "minkowski/sampled_function.hpp"

namespace minkowski {

/// Expanding piecewise Moebius map of [0,1] whose branches are each onto.
/// The density factor at y is map'(y) / branch_count.
class ShiftMap {
 public:
  /// Two branches: y/(1-y) on [0,1/2), (2y-1)/y on [1/2,1].
  static ShiftMap farey();
  /// Three branches: 2y/(1-y) on [0,1/3), 3y-1 on [1/3,2/3), (3y-2)/y on [2/3,1].
  static ShiftMap triadic();

  /// Throws std::invalid_argument unless every piece is increasing and onto [0,1].
  ShiftMap(std::string name, PiecewiseMoebius map);

  const std::string& name() const { return name_; }
  const PiecewiseMoebius& map() const { return map_; }
  std::size_t branch_count() const { return map_.branch_count(); }
  /// Largest branch derivative (attained at the breakpoints for A and B).
  double max_expansion() const { return max_expansion_; }

  double apply(double y) const { return map_.apply(y); }
  double factor(double y) const { return map_.derivative(y) / static_cast<double>(branch_count()); }
  Rational factor(const Rational& y) const {
    return map_.derivative(y) / Rational(static_cast<long>(branch_count()));
  }

 private:
  std::string name_;
  PiecewiseMoebius map_;
  double max_expansion_ = 0;
};

/// The k-fold composite map^k as an explicit piecewise map (branch_count^k
/// pieces). Throws ResourceLimitError past the resource cap.
PiecewiseMoebius iterate_A(const ShiftMap& map, unsigned k);

/// prod_{k<depth} factor(y_k) with y_{k+1} = map(y_k); zero as soon as an
/// iterate among y_0..y_{depth-1} is exactly 0 or 1.
double product_density(const ShiftMap& map, double y, unsigned depth);
Rational product_density(const ShiftMap& map, const Rational& y, unsigned depth);

/// floor(-log2 h) computed exactly. Throws std::invalid_argument unless 0 < h < 1.
unsigned truncation_depth(double h);

/// Largest depth whose finest pieces are still about h wide:
/// floor(log(1/h) / log(max_expansion)), at least 1.
unsigned resolved_depth(const ShiftMap& map, double h);

/// log 2 + 2 log(1 - ?^-1(y)) on [0,1/2], mirrored about 1/2.
double potential_V(double y);
double potential_V(const Dyadic& y);

/// Tent potential -2x + 1/2 on [0,1/2], 2x - 3/2 on [1/2,1].
double kac_potential(double x);

struct DensityProfile {
  unsigned depth = 0;
  std::string map_name;
  std::vector<double> y;
  std::vector<double> value;
};

/// exp(-sum_{k<depth} V(b^k(?(y)))) / Z with b(w) = 2w mod 1, normalized so
/// the Riemann sum over the grid's Voronoi cells (clipped to [0,1]) is 1.
/// Throws std::invalid_argument on an empty or non-increasing grid.
DensityProfile gibbs_density(const std::function<double(double)>& potential, const std::vector<double>& y_grid,
                             unsigned depth, std::string label = "gibbs");
DensityProfile kac_gibbs_density(const std::vector<double>& y_grid, unsigned depth);
DensityProfile exact_gibbs_density(const std::vector<double>& y_grid, unsigned depth);

/// Running integral of a profile: each sample carries its Voronoi cell; the
/// result is piecewise linear between cell edges.
class CumulativeDensity {
 public:
  explicit CumulativeDensity(const DensityProfile& profile);
  double operator()(double x) const;
  double total() const { return values_.back(); }

 private:
  std::vector<double> edges_;
  std::vector<double> values_;
};

enum class SurdVerdict { Zero, Infinite, Boundary };
std::string to_string(SurdVerdict v);

struct SurdClass {
  SurdVerdict verdict = SurdVerdict::Boundary;
  /// Product of factor(.) over the exact periodic orbit.
  QuadraticNumber period_product;
  double period_product_value = 0;
  std::size_t preperiod_length = 0;
  std::size_t period_length = 0;
};

/// Throws std::invalid_argument if y is outside (0,1), NoCycleError when the
/// orbit does not close within max_steps.
SurdClass classify_surd(const ShiftMap& map, const QuadraticSurd& y, std::size_t max_steps = 100000);

/// Composite midpoint rule with ceil-rounded cell count (b - a) / h, depth
/// truncation_depth(h) unless given. Throws std::invalid_argument unless
/// 0 <= a < b <= 1 and 0 < h < 1.
double integrate_density(const ShiftMap& map, double a, double b, double h,
                         std::optional<unsigned> depth = std::nullopt);

/// Midpoint-sampled product density on cells of width h at depth
/// resolved_depth(map, h), integrated into a cumulative function.
CumulativeDensity cumulative_product(const ShiftMap& map, double h, std::optional<unsigned> depth = std::nullopt);

/// The 3-adic analogue of ?, read off the triadic cumulative density on the
/// given grid (which must run from 0 to 1).
SampledFunction qmark3(const std::vector<double>& x_grid, double h);

}  // namespace minkowski
