#include "minkowski/sampled_function.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace minkowski {

SampledFunction::SampledFunction(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.size() != values_.size()) throw std::invalid_argument("SampledFunction: grid and values differ in size");
  if (grid_.size() < 2) throw std::invalid_argument("SampledFunction: need at least two points");
  if (grid_.front() != 0.0 || grid_.back() != 1.0) {
    throw std::invalid_argument("SampledFunction: grid must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    if (!(grid_[i - 1] < grid_[i])) throw std::invalid_argument("SampledFunction: grid must be strictly increasing");
  }
}

SampledFunction SampledFunction::sample(const std::function<double(double)>& f, std::vector<double> grid) {
  std::vector<double> values;
  values.reserve(grid.size());
  for (double y : grid) values.push_back(f(y));
  return {std::move(grid), std::move(values)};
}

std::vector<double> SampledFunction::uniform_grid(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_grid: need at least one interval");
  std::vector<double> grid(n + 1);
  for (std::size_t i = 0; i <= n; ++i) grid[i] = static_cast<double>(i) / static_cast<double>(n);
  return grid;
}

double SampledFunction::operator()(double y) const {
  if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("SampledFunction: " + std::to_string(y) + " outside [0,1]");
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), y);
  if (it == grid_.end()) return values_.back();
  const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
  const double t = (y - grid_[i]) / (grid_[i + 1] - grid_[i]);
  return values_[i] + t * (values_[i + 1] - values_[i]);
}

double SampledFunction::integral() const {
  double sum = 0.0;
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    sum += 0.5 * (grid_[i] - grid_[i - 1]) * (values_[i] + values_[i - 1]);
  }
  return sum;
}

}  // namespace minkowski
