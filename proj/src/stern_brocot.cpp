#include "minkowski/stern_brocot.hpp"

#include <stdexcept>
#include <string>

#include "minkowski/resource.hpp"

namespace minkowski {

std::vector<Rational> stern_brocot_rows_through(unsigned k) {
  require_within_cap(pow2_saturating(k + 1), "Stern-Brocot rows 0.." + std::to_string(k));
  // Sorted union with the endpoints 0/1 and 1/1 as running neighbours; each
  // pass inserts the mediant into every gap.
  std::vector<Rational> current{Rational(0), Rational(1)};
  for (unsigned row = 0; row <= k; ++row) {
    std::vector<Rational> next;
    next.reserve(2 * current.size() - 1);
    for (std::size_t i = 0; i + 1 < current.size(); ++i) {
      next.push_back(current[i]);
      next.push_back(mediant(current[i], current[i + 1]));
    }
    next.push_back(current.back());
    current = std::move(next);
  }
  return {current.begin() + 1, current.end() - 1};
}

std::vector<Rational> stern_brocot_row(unsigned k) {
  require_within_cap(pow2_saturating(k), "Stern-Brocot row " + std::to_string(k));
  std::vector<Rational> all = stern_brocot_rows_through(k);
  // Row k occupies every other slot of the merged list, starting at the first.
  std::vector<Rational> row;
  row.reserve(all.size() / 2 + 1);
  for (std::size_t i = 0; i < all.size(); i += 2) row.push_back(std::move(all[i]));
  return row;
}

Rational stern_brocot_node(std::string_view word) {
  Rational y(1, 2);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    switch (*it) {
      case 'L':
        y = y / (Rational(1) + y);
        break;
      case 'R':
        y = Rational(1) / (Rational(2) - y);
        break;
      default:
        throw std::invalid_argument("stern_brocot_node: word may contain only 'L' and 'R'");
    }
  }
  return y;
}

}  // namespace minkowski
