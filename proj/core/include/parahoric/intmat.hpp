#pragma once

#include <vector>

#include "parahoric/cyclotomic.hpp"

namespace parahoric {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Exact rank by fraction-free Gaussian elimination. Rows may have unequal
// length conceptually; callers pass rectangular data.
long matrix_rank(RationalMatrix m);

// Flattens cyclotomic vectors into rational row vectors over a shared
// conductor, so spans and ranks of class-function families can be computed
// exactly. All rows use the power basis at the least common conductor.
RationalMatrix flatten_to_rational_rows(const std::vector<std::vector<Cyclotomic>>& rows);

}  // namespace parahoric
