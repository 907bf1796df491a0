#pragma once

#include <string_view>
#include <vector>

#include "minkowski/rational.hpp"

namespace minkowski {

/// The 2^k fractions of Stern-Brocot row k inside (0,1), increasing.
/// Throws ResourceLimitError when 2^k exceeds the resource cap.
std::vector<Rational> stern_brocot_row(unsigned k);

/// All fractions of rows 0..k merged in increasing order (2^(k+1) - 1 values).
std::vector<Rational> stern_brocot_rows_through(unsigned k);

/// Node reached from 1/2 by an L/R word, read as a composition of the inverse
/// branches L^-1(y) = y/(1+y) and R^-1(y) = 1/(2-y) with the rightmost letter
/// applied first: "LLR" is L^-1(L^-1(R^-1(1/2))) = 2/7.
Rational stern_brocot_node(std::string_view word);

}  // namespace minkowski
