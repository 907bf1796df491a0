#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace minkowski {

/// Values on a strictly increasing grid from 0 to 1, read between grid
/// points by linear interpolation.
class SampledFunction {
 public:
  /// Throws std::invalid_argument on mismatched sizes, fewer than two points,
  /// a non-increasing grid, or a grid that does not run from 0 to 1.
  SampledFunction(std::vector<double> grid, std::vector<double> values);

  static SampledFunction sample(const std::function<double(double)>& f, std::vector<double> grid);
  /// n + 1 equally spaced points 0, 1/n, ..., 1.
  static std::vector<double> uniform_grid(std::size_t n);

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return grid_.size(); }

  /// Throws std::domain_error outside [0,1].
  double operator()(double y) const;

  /// Trapezoid rule over the grid.
  double integral() const;

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
};

}  // namespace minkowski
