#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "perc/anneal.hpp"
#include "perc/engine.hpp"
#include "perc/grid.hpp"

namespace perc {

enum class SearchMode { ExhaustiveProven, HeuristicWitness, Failed };

std::string_view to_string(SearchMode mode);

struct SearchResult {
  GridDims dims;
  SearchMode mode = SearchMode::Failed;
  std::optional<std::int64_t> min_size;  // ExhaustiveProven only
  std::optional<CellSet> witness;
  std::uint64_t nodes_explored = 0;
  std::optional<std::uint64_t> rng_seed;  // HeuristicWitness / annealing runs
  std::string note;                        // progress on failure
};

// Exhaustive minimum is refused above this many cells.
inline constexpr std::int64_t kExhaustiveCellCap = 30;

struct ExhaustiveOptions {
  int threshold = kDefaultThreshold;
  std::uint64_t node_budget = 2'000'000'000;
  // Start at the surface bound (3-neighbour only). When false, every size
  // from the forced-cell count upward is enumerated, which makes the
  // result independent of the bound.
  bool start_at_bound = true;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Smallest percolating set by enumeration in increasing size. Cells of
// degree below the threshold are forced into every candidate; the first
// free cell is restricted to grid-automorphism orbit representatives;
// candidates are tried in lexicographic index order.
SearchResult min_exhaustive(const GridDims& dims,
                            const ExhaustiveOptions& options = {});

// ceil((3c+1)/2), the closed form for the minimum on (2,2,c).
std::int64_t min_22c(std::int64_t c);

struct AtBoundOptions {
  AnnealParams anneal;
  std::uint64_t budget = 200'000'000;  // total moves over all restarts
  std::uint64_t rng_seed = 1;
  unsigned threads = 1;
};

// Annealing over seed sets of exactly `target` cells; cost is the number
// of cells outside the closure. Requires target >= ceil((ab+ac+bc)/3).
SearchResult find_at_bound(const GridDims& dims, std::int64_t target,
                           const AtBoundOptions& options = {});

}  // namespace perc
