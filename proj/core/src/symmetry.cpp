#include "perc/symmetry.hpp"

#include <algorithm>

namespace perc {

bool Orientation::is_identity() const noexcept {
  return perm == std::array<int, 3>{0, 1, 2} &&
         flip == std::array<bool, 3>{false, false, false};
}

const std::array<Orientation, 48>& all_orientations() {
  static const std::array<Orientation, 48> table = [] {
    std::array<Orientation, 48> out{};
    std::array<int, 3> perm{0, 1, 2};
    std::size_t k = 0;
    do {
      for (int bits = 0; bits < 8; ++bits) {
        out[k].perm = perm;
        out[k].flip = {(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0};
        ++k;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }();
  return table;
}

GridDims apply(const Orientation& o, const GridDims& dims) noexcept {
  const auto s = dims.sides();
  return GridDims{s[o.perm[0]], s[o.perm[1]], s[o.perm[2]]};
}

Cell apply(const Orientation& o, const GridDims& source, const Cell& cell) {
  const std::array<int, 3> in{cell.x, cell.y, cell.z};
  const auto side = source.sides();
  std::array<int, 3> out{};
  for (int i = 0; i < 3; ++i) {
    const int axis = o.perm[i];
    out[i] = o.flip[i] ? side[axis] + 1 - in[axis] : in[axis];
  }
  return Cell{out[0], out[1], out[2]};
}

CellSet apply(const Orientation& o, const CellSet& set) {
  const GridDims& source = set.dims();
  CellSet out(apply(o, source));
  set.for_each(
      [&](std::size_t i) { out.insert(apply(o, source, cell_at(source, i))); });
  return out;
}

std::vector<Orientation> automorphisms(const GridDims& dims) {
  std::vector<Orientation> out;
  for (const Orientation& o : all_orientations()) {
    if (apply(o, dims) == dims) out.push_back(o);
  }
  return out;
}

std::optional<Orientation> permutation_to(const GridDims& from,
                                          const GridDims& to) {
  for (const Orientation& o : all_orientations()) {
    if (o.flip != std::array<bool, 3>{false, false, false}) continue;
    if (apply(o, from) == to) return o;
  }
  return std::nullopt;
}

}  // namespace perc
