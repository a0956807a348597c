#pragma once

#include <array>
#include <string>

#include "perc/bounds.hpp"
#include "perc/grid.hpp"

namespace perc {

// One dispatch step for a grid with sorted sides.
struct Recipe {
  enum class Kind {
    Family,   // assemble a periodic family
    Stored,   // a catalog witness (searched and frozen)
    Split,    // octant composition at (a1, b1, c1)
    Generic,  // any split the builder can supply
  };

  GridDims dims;
  Status need = Status::Perfect;
  Kind kind = Kind::Generic;
  std::string rule;  // short description of the case taken

  std::string family;  // Family
  int family_c = 0;    // Family
  std::array<int, 3> split{};  // Split: a1, b1, c1

  // Split: the four part grids, in combine order.
  std::array<GridDims, 4> parts() const;
  // Split: p1 carries the requested status, the rest must be perfect.
  Status part_need(int index) const noexcept {
    return index == 0 ? need : Status::Perfect;
  }
};

std::string to_string(Recipe::Kind kind);

// Perfect (4, b, c) for b ≡ c ≡ 0 or 1 (mod 3), 4 <= b <= c.
// Throws InputError outside that range.
Recipe perfect4_recipe(int b, int c);

// Optimal (a, b, c) for 7 <= a <= b <= c. When the bound is integral the
// recipe asks for a perfect grid.
Recipe optimal_recipe(int a, int b, int c);

}  // namespace perc
