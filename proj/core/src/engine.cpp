#include "perc/engine.hpp"

#include <algorithm>
#include <limits>

#include "perc/error.hpp"

namespace perc {
namespace {

void check_threshold(int threshold) {
  if (threshold < 1) {
    throw InputError("threshold r must be positive, got " +
                     std::to_string(threshold));
  }
}

}  // namespace

CellSet step(const CellSet& current, int threshold) {
  check_threshold(threshold);
  const GridDims& dims = current.dims();
  CellSet next = current;
  for (std::size_t v = 0; v < current.universe(); ++v) {
    if (current.contains(v)) continue;
    int infected = 0;
    for_each_neighbour(dims, v, [&](std::size_t u) {
      if (current.contains(u)) ++infected;
    });
    if (infected >= threshold) next.insert(v);
  }
  return next;
}

std::size_t PercolationTrace::infected_count() const {
  return static_cast<std::size_t>(
      std::count_if(infection_time.begin(), infection_time.end(),
                    [](std::int32_t t) { return t != kNever; }));
}

CellSet PercolationTrace::seeds() const { return frame(0); }

CellSet PercolationTrace::frame(int t) const {
  CellSet out(dims);
  for (std::size_t i = 0; i < infection_time.size(); ++i) {
    if (infection_time[i] != kNever && infection_time[i] <= t) out.insert(i);
  }
  return out;
}

std::int32_t PercolationTrace::time_of(const Cell& cell) const {
  return infection_time[cell_index(dims, cell)];
}

PercolationTrace percolate(const CellSet& seeds, int threshold,
                           std::optional<std::int64_t> max_steps) {
  check_threshold(threshold);
  const GridDims& dims = seeds.dims();
  const std::int64_t limit = max_steps.value_or(dims.cells());
  if (limit < 0) throw InputError("max_steps must be nonnegative");

  const std::size_t n = seeds.universe();
  PercolationTrace trace;
  trace.dims = dims;
  trace.threshold = threshold;
  trace.infection_time.assign(n, kNever);
  trace.neighbours_at_infection.assign(n, 0);

  std::vector<std::uint8_t> count(n, 0);
  std::vector<std::uint32_t> frontier = seeds.indices();
  std::vector<std::uint32_t> next;
  for (std::uint32_t v : frontier) trace.infection_time[v] = 0;

  std::size_t infected = frontier.size();
  std::int64_t t = 0;
  while (!frontier.empty()) {
    next.clear();
    for (std::uint32_t v : frontier) {
      for_each_neighbour(dims, v, [&](std::size_t u) {
        if (trace.infection_time[u] != kNever) return;
        if (++count[u] == threshold) next.push_back(static_cast<std::uint32_t>(u));
      });
    }
    if (next.empty()) break;
    if (t >= limit) {
      trace.truncated = true;
      break;
    }
    ++t;
    for (std::uint32_t u : next) {
      trace.infection_time[u] = static_cast<std::int32_t>(t);
      trace.neighbours_at_infection[u] = count[u];
    }
    infected += next.size();
    frontier.swap(next);
  }
  trace.steps_taken = static_cast<int>(t);
  trace.percolated = infected == n;
  return trace;
}

std::int64_t degree_pair_sum(const CellSet& set) {
  std::int64_t total = 0;
  const GridDims& dims = set.dims();
  set.for_each([&](std::size_t v) {
    for_each_neighbour(dims, v, [&](std::size_t u) {
      if (set.contains(u)) ++total;
    });
  });
  return total;
}

std::int64_t surface_quantity(const CellSet& set) {
  return 6 * static_cast<std::int64_t>(set.size()) - degree_pair_sum(set);
}

ClosureKernel::ClosureKernel(GridDims dims, int threshold)
    : dims_(dims), threshold_(threshold) {
  check_threshold(threshold);
  const std::size_t n = static_cast<std::size_t>(dims.cells());
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw CapacityError("grid too large for the closure kernel");
  }
  adjacency_.resize(n);
  degree_.assign(n, 0);
  count_.assign(n, 0);
  infected_.assign(n, 0);
  stack_.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    for_each_neighbour(dims, v, [&](std::size_t u) {
      adjacency_[v][degree_[v]++] = static_cast<std::uint32_t>(u);
    });
  }
}

std::size_t ClosureKernel::run(std::span<const std::uint32_t> seeds) {
  std::fill(count_.begin(), count_.end(), 0);
  std::fill(infected_.begin(), infected_.end(), 0);
  stack_.clear();
  std::size_t total = 0;
  for (std::uint32_t s : seeds) {
    if (infected_[s]) continue;
    infected_[s] = 1;
    ++total;
    stack_.push_back(s);
  }
  while (!stack_.empty()) {
    const std::uint32_t v = stack_.back();
    stack_.pop_back();
    const auto& adj = adjacency_[v];
    for (std::uint8_t k = 0; k < degree_[v]; ++k) {
      const std::uint32_t u = adj[k];
      if (infected_[u]) continue;
      if (++count_[u] >= threshold_) {
        infected_[u] = 1;
        ++total;
        stack_.push_back(u);
      }
    }
  }
  return total;
}

}  // namespace perc
