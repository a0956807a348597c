#pragma once

#include <array>

#include "perc/catalog.hpp"

namespace perc {

// Octant composition. With p1 on (a1,b1,c1), p2 on (a2,b2,c1), p3 on
// (a2,b1,c2) and p4 on (a1,b2,c2), the parts occupy the corners
//   p1 at (0,0,0), p2 at (a1,b1,0), p3 at (a1,0,c1), p4 at (0,b1,c1)
// of the (a1+a2, b1+b2, c1+c2) grid, so every empty octant touches three
// filled ones. p2..p4 must be perfect; the result is perfect when p1 is
// perfect and optimal when p1 is optimal. Orientation retries run through
// the eight reflections in canonical order. The returned entry is verified
// and carries the part ids as provenance.
CatalogEntry combine(const CatalogEntry& p1, const CatalogEntry& p2,
                     const CatalogEntry& p3, const CatalogEntry& p4);

// Dimensions of the four octant parts for a split of `total` at
// (a1, b1, c1).
std::array<GridDims, 4> octant_parts(const GridDims& total, int a1, int b1, int c1);

// (1, 2^k-1, 2^k-1): k = 1 is one seed; larger k places four copies of the
// k-1 witness in the quadrants and seeds the centre of the cross between
// them. Falls back to annealing if the doubled set does not percolate.
CatalogEntry gen_thickness1(int k);

}  // namespace perc
