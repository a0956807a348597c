#include "perc/grid.hpp"

#include <algorithm>
#include <bit>

#include "perc/error.hpp"

namespace perc {

GridDims GridDims::make(std::int64_t a, std::int64_t b, std::int64_t c) {
  if (a < 1 || b < 1 || c < 1) {
    throw InputError("grid sides must be positive, got (" + std::to_string(a) +
                     "," + std::to_string(b) + "," + std::to_string(c) + ")");
  }
  if (a > kMaxCells || b > kMaxCells || c > kMaxCells ||
      a * b > kMaxCells || a * b * c > kMaxCells) {
    throw CapacityError("grid (" + std::to_string(a) + "," +
                        std::to_string(b) + "," + std::to_string(c) +
                        ") exceeds the cell cap of " +
                        std::to_string(kMaxCells));
  }
  return GridDims{static_cast<int>(a), static_cast<int>(b),
                  static_cast<int>(c)};
}

int GridDims::thickness() const noexcept { return std::min({a, b, c}); }

GridDims GridDims::sorted() const noexcept {
  std::array<int, 3> s{a, b, c};
  std::sort(s.begin(), s.end());
  return GridDims{s[0], s[1], s[2]};
}

std::string GridDims::to_string() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," +
         std::to_string(c) + ")";
}

bool inside(const GridDims& dims, const Cell& cell) noexcept {
  return cell.x >= 1 && cell.x <= dims.a && cell.y >= 1 && cell.y <= dims.b &&
         cell.z >= 1 && cell.z <= dims.c;
}

std::size_t cell_index(const GridDims& dims, const Cell& cell) {
  if (!inside(dims, cell)) {
    throw InputError("cell (" + std::to_string(cell.x) + "," +
                     std::to_string(cell.y) + "," + std::to_string(cell.z) +
                     ") is outside grid " + dims.to_string());
  }
  return (static_cast<std::size_t>(cell.x - 1) * dims.b +
          static_cast<std::size_t>(cell.y - 1)) *
             dims.c +
         static_cast<std::size_t>(cell.z - 1);
}

Cell cell_at(const GridDims& dims, std::size_t index) {
  const std::size_t c = static_cast<std::size_t>(dims.c);
  const std::size_t b = static_cast<std::size_t>(dims.b);
  return Cell{static_cast<int>(index / (b * c)) + 1,
              static_cast<int>((index / c) % b) + 1,
              static_cast<int>(index % c) + 1};
}

std::vector<Cell> neighbours(const GridDims& dims, const Cell& cell) {
  const std::size_t index = cell_index(dims, cell);
  std::vector<Cell> out;
  out.reserve(6);
  for_each_neighbour(dims, index,
                     [&](std::size_t n) { out.push_back(cell_at(dims, n)); });
  return out;
}

int degree(const GridDims& dims, std::size_t index) noexcept {
  int d = 0;
  for_each_neighbour(dims, index, [&](std::size_t) { ++d; });
  return d;
}

CellSet::CellSet(GridDims dims)
    : dims_(dims),
      words_((static_cast<std::size_t>(dims.cells()) + 63) / 64, 0) {}

CellSet CellSet::full(GridDims dims) {
  CellSet s(dims);
  const std::size_t n = s.universe();
  std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
  if (n % 64 != 0) s.words_.back() = (std::uint64_t{1} << (n % 64)) - 1;
  return s;
}

CellSet CellSet::from_cells(GridDims dims, std::span<const Cell> cells) {
  CellSet s(dims);
  for (const Cell& cell : cells) s.insert(cell);
  return s;
}

CellSet CellSet::from_indices(GridDims dims,
                              std::span<const std::uint32_t> indices) {
  CellSet s(dims);
  for (std::uint32_t i : indices) {
    if (i >= s.universe()) {
      throw InputError("cell index " + std::to_string(i) +
                       " is outside grid " + dims.to_string());
    }
    s.insert(i);
  }
  return s;
}

bool CellSet::contains(const Cell& cell) const {
  return contains(cell_index(dims_, cell));
}

void CellSet::insert(const Cell& cell) { insert(cell_index(dims_, cell)); }

void CellSet::erase(const Cell& cell) { erase(cell_index(dims_, cell)); }

std::size_t CellSet::size() const noexcept {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool CellSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

std::vector<std::uint32_t> CellSet::indices() const {
  std::vector<std::uint32_t> out;
  out.reserve(size());
  for_each([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
  return out;
}

std::vector<Cell> CellSet::cells() const {
  std::vector<Cell> out;
  out.reserve(size());
  for_each([&](std::size_t i) { out.push_back(cell_at(dims_, i)); });
  return out;
}

CellSet& CellSet::operator|=(const CellSet& other) {
  if (other.dims_ != dims_) {
    throw InputError("cell sets on different grids " + dims_.to_string() +
                     " and " + other.dims_.to_string());
  }
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

bool CellSet::is_subset_of(const CellSet& other) const {
  if (other.dims_ != dims_) return false;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

void place(CellSet& into, const CellSet& part, int dx, int dy, int dz) {
  const GridDims& outer = into.dims();
  const GridDims& inner = part.dims();
  if (dx < 0 || dy < 0 || dz < 0 || dx + inner.a > outer.a ||
      dy + inner.b > outer.b || dz + inner.c > outer.c) {
    throw InputError("part " + inner.to_string() + " does not fit in " +
                     outer.to_string() + " at the requested offset");
  }
  part.for_each([&](std::size_t i) {
    const Cell p = cell_at(inner, i);
    into.insert(Cell{p.x + dx, p.y + dy, p.z + dz});
  });
}

}  // namespace perc
