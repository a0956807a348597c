#pragma once

#include <array>
#include <optional>
#include <vector>

#include "perc/grid.hpp"

namespace perc {

// A grid isometry: output axis i reads input axis `perm[i]`, then is
// reversed when `flip[i]` is set.
struct Orientation {
  std::array<int, 3> perm{0, 1, 2};
  std::array<bool, 3> flip{false, false, false};

  bool is_identity() const noexcept;
  friend bool operator==(const Orientation&, const Orientation&) = default;
};

// All 48 orientations: permutations in lexicographic order, flips as a
// 3-bit counter within each permutation. Index 0 is the identity.
const std::array<Orientation, 48>& all_orientations();

GridDims apply(const Orientation& o, const GridDims& dims) noexcept;
Cell apply(const Orientation& o, const GridDims& source, const Cell& cell);
CellSet apply(const Orientation& o, const CellSet& set);

// Orientations mapping `dims` onto itself.
std::vector<Orientation> automorphisms(const GridDims& dims);

// First pure axis permutation taking `from` onto `to`, if the side
// multisets agree.
std::optional<Orientation> permutation_to(const GridDims& from,
                                          const GridDims& to);

}  // namespace perc
