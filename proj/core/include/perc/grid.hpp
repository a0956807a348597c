#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace perc {

// Hard cap on a·b·c.
inline constexpr std::int64_t kMaxCells = std::int64_t{1} << 24;

// Side lengths of P_a □ P_b □ P_c: a layers, b rows, c columns.
struct GridDims {
  int a = 1;
  int b = 1;
  int c = 1;

  // Validating constructor; throws InputError / CapacityError.
  static GridDims make(std::int64_t a, std::int64_t b, std::int64_t c);

  std::int64_t cells() const noexcept {
    return std::int64_t{a} * b * c;
  }
  int thickness() const noexcept;
  std::array<int, 3> sides() const noexcept { return {a, b, c}; }
  GridDims sorted() const noexcept;
  std::string to_string() const;

  friend auto operator<=>(const GridDims&, const GridDims&) = default;
};

// 1-based (layer, row, column).
struct Cell {
  int x = 1;
  int y = 1;
  int z = 1;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

bool inside(const GridDims& dims, const Cell& cell) noexcept;

// Linear index in (layer, row, column) order. Throws InputError outside dims.
std::size_t cell_index(const GridDims& dims, const Cell& cell);
Cell cell_at(const GridDims& dims, std::size_t index);

// Grid-adjacent cells of `cell`, in the fixed order -x,+x,-y,+y,-z,+z.
std::vector<Cell> neighbours(const GridDims& dims, const Cell& cell);

// Index-level neighbour walk used by the hot loops.
template <typename F>
void for_each_neighbour(const GridDims& dims, std::size_t index, F&& f) {
  const std::size_t c = static_cast<std::size_t>(dims.c);
  const std::size_t bc = static_cast<std::size_t>(dims.b) * c;
  const std::size_t z = index % c;
  const std::size_t y = (index / c) % static_cast<std::size_t>(dims.b);
  const std::size_t x = index / bc;
  if (x > 0) f(index - bc);
  if (x + 1 < static_cast<std::size_t>(dims.a)) f(index + bc);
  if (y > 0) f(index - c);
  if (y + 1 < static_cast<std::size_t>(dims.b)) f(index + c);
  if (z > 0) f(index - 1);
  if (z + 1 < c) f(index + 1);
}

int degree(const GridDims& dims, std::size_t index) noexcept;

// Subset of the vertices of one grid, stored as a bitset.
class CellSet {
 public:
  explicit CellSet(GridDims dims);

  static CellSet full(GridDims dims);
  static CellSet from_cells(GridDims dims, std::span<const Cell> cells);
  static CellSet from_indices(GridDims dims,
                              std::span<const std::uint32_t> indices);

  const GridDims& dims() const noexcept { return dims_; }
  std::size_t universe() const noexcept {
    return static_cast<std::size_t>(dims_.cells());
  }

  bool contains(std::size_t index) const noexcept {
    return (words_[index >> 6] >> (index & 63)) & 1u;
  }
  bool contains(const Cell& cell) const;
  void insert(std::size_t index) noexcept {
    words_[index >> 6] |= std::uint64_t{1} << (index & 63);
  }
  void insert(const Cell& cell);
  void erase(std::size_t index) noexcept {
    words_[index >> 6] &= ~(std::uint64_t{1} << (index & 63));
  }
  void erase(const Cell& cell);

  std::size_t size() const noexcept;
  bool empty() const noexcept;
  bool is_full() const noexcept { return size() == universe(); }

  std::vector<std::uint32_t> indices() const;
  std::vector<Cell> cells() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int bit = __builtin_ctzll(bits);
        f(w * 64 + static_cast<std::size_t>(bit));
        bits &= bits - 1;
      }
    }
  }

  CellSet& operator|=(const CellSet& other);
  bool is_subset_of(const CellSet& other) const;
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const CellSet&, const CellSet&) = default;

 private:
  GridDims dims_;
  std::vector<std::uint64_t> words_;
};

// Copies `part` into `into` with its origin at the given 0-based offsets.
void place(CellSet& into, const CellSet& part, int dx, int dy, int dz);

}  // namespace perc
