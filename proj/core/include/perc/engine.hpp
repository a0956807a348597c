#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "perc/grid.hpp"

namespace perc {

inline constexpr int kDefaultThreshold = 3;
inline constexpr std::int32_t kNever = -1;

// One synchronous update: A_t = A_{t-1} ∪ {v : |N(v) ∩ A_{t-1}| >= r}.
CellSet step(const CellSet& current, int threshold = kDefaultThreshold);

struct PercolationTrace {
  GridDims dims;
  int threshold = kDefaultThreshold;
  // Per cell index; kNever for cells outside the final closure.
  std::vector<std::int32_t> infection_time;
  // |N(v) ∩ A_{t-1}| for a cell infected at t >= 1; 0 for seeds.
  std::vector<std::uint8_t> neighbours_at_infection;
  bool percolated = false;
  // Stopped at max_steps with infections still pending.
  bool truncated = false;
  int steps_taken = 0;

  std::size_t infected_count() const;
  CellSet seeds() const;
  // A_t, clamped to the last computed frame.
  CellSet frame(int t) const;
  CellSet final_set() const { return frame(steps_taken); }
  std::int32_t time_of(const Cell& cell) const;
};

// Iterates `step` to a fixed point. max_steps defaults to a·b·c, which
// always suffices.
PercolationTrace percolate(const CellSet& seeds,
                           int threshold = kDefaultThreshold,
                           std::optional<std::int64_t> max_steps = std::nullopt);

// n(A): sum over x in A of |N(x) ∩ A|, i.e. twice the internal edge count.
std::int64_t degree_pair_sum(const CellSet& set);

// 6|A| - n(A). Nonincreasing along the 3-neighbour process.
std::int64_t surface_quantity(const CellSet& set);

// Closure sizes for many seed sets on one grid. Holds scratch buffers, so
// one kernel per thread.
class ClosureKernel {
 public:
  explicit ClosureKernel(GridDims dims, int threshold = kDefaultThreshold);

  const GridDims& dims() const noexcept { return dims_; }
  std::size_t cells() const noexcept { return degree_.size(); }

  // Number of cells in the closure of `seeds` (duplicates ignored).
  std::size_t run(std::span<const std::uint32_t> seeds);
  std::size_t uninfected(std::span<const std::uint32_t> seeds) {
    return cells() - run(seeds);
  }
  bool percolates(std::span<const std::uint32_t> seeds) {
    return run(seeds) == cells();
  }
  // Valid after `run`.
  bool infected(std::size_t index) const noexcept { return infected_[index] != 0; }

 private:
  GridDims dims_;
  int threshold_;
  std::vector<std::array<std::uint32_t, 6>> adjacency_;
  std::vector<std::uint8_t> degree_;
  std::vector<std::uint8_t> count_;
  std::vector<std::uint8_t> infected_;
  std::vector<std::uint32_t> stack_;
};

}  // namespace perc
