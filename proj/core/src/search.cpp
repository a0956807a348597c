#include "perc/search.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <memory>
#include <thread>

#include "perc/bounds.hpp"
#include "perc/error.hpp"
#include "perc/symmetry.hpp"

namespace perc {
namespace {

struct PrefixResult {
  bool done = false;
  bool found = false;
  bool exhausted_budget = false;
  std::vector<std::uint32_t> witness;
  std::uint64_t nodes = 0;
};

// Enumerates k-subsets of `free_cells` whose first element is free_cells[first],
// in lexicographic order, stopping at the first percolating one.
PrefixResult enumerate_prefix(ClosureKernel& kernel,
                              const std::vector<std::uint32_t>& forced,
                              const std::vector<std::uint32_t>& free_cells,
                              std::size_t first, std::size_t k,
                              std::uint64_t budget,
                              const std::atomic<std::uint64_t>& spent,
                              const std::atomic<std::size_t>& winner) {
  PrefixResult out;
  const std::size_t m = free_cells.size();
  if (first + k > m) {
    out.done = true;
    return out;
  }
  std::vector<std::uint32_t> seeds(forced);
  seeds.resize(forced.size() + k);
  std::vector<std::size_t> pos(k);
  for (std::size_t i = 0; i < k; ++i) pos[i] = first + i;
  while (true) {
    if ((out.nodes & 1023) == 0) {
      if (winner.load(std::memory_order_relaxed) < first) return out;
      if (spent.load(std::memory_order_relaxed) + out.nodes > budget) {
        out.exhausted_budget = true;
        return out;
      }
    }
    for (std::size_t i = 0; i < k; ++i) seeds[forced.size() + i] = free_cells[pos[i]];
    ++out.nodes;
    if (kernel.percolates(seeds)) {
      out.found = true;
      out.done = true;
      out.witness = seeds;
      return out;
    }
    // Advance positions 1..k-1; position 0 stays at `first`.
    std::size_t i = k;
    while (i > 1) {
      --i;
      if (pos[i] < m - (k - i)) break;
      if (i == 1) {
        out.done = true;
        return out;
      }
    }
    if (k <= 1) {
      out.done = true;
      return out;
    }
    ++pos[i];
    for (std::size_t j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
  }
}

}  // namespace

std::string_view to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::ExhaustiveProven: return "exhaustive-proven";
    case SearchMode::HeuristicWitness: return "heuristic-witness";
    case SearchMode::Failed: return "failed";
  }
  return "?";
}

SearchResult min_exhaustive(const GridDims& dims, const ExhaustiveOptions& options) {
  if (dims.cells() > kExhaustiveCellCap) {
    throw CapacityError("exhaustive search is limited to " +
                        std::to_string(kExhaustiveCellCap) + " cells, " +
                        dims.to_string() + " has " + std::to_string(dims.cells()));
  }
  const std::size_t n = static_cast<std::size_t>(dims.cells());
  std::vector<std::uint32_t> forced;
  std::vector<std::uint32_t> free_cells;
  for (std::size_t v = 0; v < n; ++v) {
    (degree(dims, v) < options.threshold ? forced : free_cells)
        .push_back(static_cast<std::uint32_t>(v));
  }
  // Orbit representatives among free cells (forced cells form a union of
  // orbits, since automorphisms preserve degree).
  const auto autos = automorphisms(dims);
  std::vector<char> representative(n, 1);
  for (std::size_t v = 0; v < n; ++v) {
    const Cell cell = cell_at(dims, v);
    for (const Orientation& o : autos) {
      if (cell_index(dims, apply(o, dims, cell)) < v) {
        representative[v] = 0;
        break;
      }
    }
  }

  SearchResult result;
  result.dims = dims;
  std::size_t start = forced.size();
  if (options.start_at_bound && options.threshold == 3) {
    start = std::max<std::size_t>(start, static_cast<std::size_t>(lower_bound(dims).ceil));
  }
  const unsigned threads = options.threads == 0
                               ? std::max(1u, std::thread::hardware_concurrency())
                               : options.threads;
  ClosureKernel probe(dims, options.threshold);

  for (std::size_t size = start; size <= n; ++size) {
    const std::size_t k = size - forced.size();
    if (k == 0) {
      ++result.nodes_explored;
      if (probe.percolates(forced)) {
        result.mode = SearchMode::ExhaustiveProven;
        result.min_size = static_cast<std::int64_t>(size);
        result.witness = CellSet::from_indices(dims, forced);
        return result;
      }
      continue;
    }
    std::vector<std::size_t> firsts;
    for (std::size_t i = 0; i + k <= free_cells.size(); ++i) {
      if (representative[free_cells[i]]) firsts.push_back(i);
    }
    std::vector<PrefixResult> parts(firsts.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> winner{std::numeric_limits<std::size_t>::max()};
    std::atomic<std::uint64_t> spent{result.nodes_explored};
    auto worker = [&] {
      ClosureKernel kernel(dims, options.threshold);
      while (true) {
        const std::size_t t = next.fetch_add(1);
        if (t >= firsts.size() || firsts[t] > winner.load()) return;
        parts[t] = enumerate_prefix(kernel, forced, free_cells, firsts[t], k,
                                    options.node_budget, spent, winner);
        spent.fetch_add(parts[t].nodes);
        if (parts[t].found) {
          std::size_t w = winner.load();
          while (firsts[t] < w && !winner.compare_exchange_weak(w, firsts[t])) {
          }
        }
      }
    };
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    for (const PrefixResult& part : parts) {
      result.nodes_explored += part.nodes;
      if (part.found) {
        result.mode = SearchMode::ExhaustiveProven;
        result.min_size = static_cast<std::int64_t>(size);
        result.witness = CellSet::from_indices(dims, part.witness);
        return result;
      }
      if (part.exhausted_budget || !part.done) {
        result.mode = SearchMode::Failed;
        result.note = "node budget exhausted at size " + std::to_string(size) +
                      "; no percolating set of size < " + std::to_string(size);
        return result;
      }
    }
  }
  result.mode = SearchMode::Failed;
  result.note = "no percolating set exists";
  return result;
}

std::int64_t min_22c(std::int64_t c) {
  if (c < 1) throw InputError("c must be positive");
  return (3 * c + 2) / 2;
}

SearchResult find_at_bound(const GridDims& dims, std::int64_t target,
                           const AtBoundOptions& options) {
  const LowerBound bound = lower_bound(dims);
  if (target < bound.ceil) {
    throw InputError("target " + std::to_string(target) +
                     " is below the surface bound " + std::to_string(bound.ceil) +
                     " for " + dims.to_string());
  }
  if (target > dims.cells()) {
    throw InputError("target exceeds the number of cells of " + dims.to_string());
  }
  const std::vector<SubsetGroup> groups{
      {static_cast<std::uint32_t>(dims.cells()), static_cast<std::uint32_t>(target)}};
  const CostFactory factory = [dims](std::uint64_t) -> CostFn {
    auto kernel = std::make_shared<ClosureKernel>(dims);
    return [kernel](const Selection& sel) {
      return static_cast<std::int64_t>(kernel->uninfected(sel[0]));
    };
  };
  const AnnealOutcome outcome = anneal_subsets(groups, factory, options.anneal,
                                               options.rng_seed, options.budget,
                                               options.threads);
  SearchResult result;
  result.dims = dims;
  result.nodes_explored = outcome.moves;
  result.rng_seed = options.rng_seed;
  if (outcome.success) {
    result.mode = SearchMode::HeuristicWitness;
    result.witness = CellSet::from_indices(dims, outcome.best[0]);
  } else {
    result.mode = SearchMode::Failed;
    result.note = "budget exhausted; best candidate leaves " +
                  std::to_string(outcome.best_cost) + " cells uninfected";
  }
  return result;
}

}  // namespace perc
