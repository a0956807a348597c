#include "perc/bounds.hpp"

#include "perc/error.hpp"

namespace perc {

std::string LowerBound::to_string() const {
  std::string s = std::to_string(numerator) + "/3";
  if (integral()) s += " = " + std::to_string(numerator / denominator);
  return s;
}

LowerBound lower_bound(const GridDims& dims) {
  const std::int64_t a = dims.a, b = dims.b, c = dims.c;
  LowerBound out;
  out.numerator = a * b + a * c + b * c;
  out.ceil = (out.numerator + LowerBound::denominator - 1) / LowerBound::denominator;
  return out;
}

bool perfect_precondition(const GridDims& dims) {
  const int ra = dims.a % 3, rb = dims.b % 3, rc = dims.c % 3;
  const int zeros = (ra == 0) + (rb == 0) + (rc == 0);
  const bool by_residue = zeros >= 2 || (ra == rb && rb == rc);
  if (by_residue != lower_bound(dims).integral()) {
    throw std::logic_error("residue test disagrees with divisibility for " +
                           dims.to_string());
  }
  return by_residue;
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::NotPercolating: return "not-percolating";
    case Status::Percolating: return "percolating";
    case Status::Optimal: return "optimal";
    case Status::Perfect: return "perfect";
  }
  return "?";
}

Status parse_status(std::string_view text) {
  if (text == "not-percolating") return Status::NotPercolating;
  if (text == "percolating") return Status::Percolating;
  if (text == "optimal") return Status::Optimal;
  if (text == "perfect") return Status::Perfect;
  throw InputError("unknown status '" + std::string(text) + "'");
}

Classification classify(const CellSet& seeds) {
  return classify(percolate(seeds, 3), seeds);
}

Classification classify(const PercolationTrace& trace, const CellSet& seeds) {
  if (trace.truncated) {
    throw TruncatedSimulation("simulation of " + trace.dims.to_string() +
                              " stopped after " +
                              std::to_string(trace.steps_taken) +
                              " steps without reaching a fixed point");
  }
  Classification out;
  out.percolates = trace.percolated;
  out.size = static_cast<std::int64_t>(seeds.size());
  out.bound = lower_bound(seeds.dims());
  out.steps = trace.steps_taken;
  if (!out.percolates) {
    out.status = Status::NotPercolating;
  } else if (out.bound.integral() && 3 * out.size == out.bound.numerator) {
    out.status = Status::Perfect;
  } else if (out.size == out.bound.ceil) {
    out.status = Status::Optimal;
  } else {
    out.status = Status::Percolating;
  }
  if (trace.threshold == 3 && out.percolates && out.size < out.bound.ceil) {
    throw std::logic_error("percolating set below the surface bound on " +
                           seeds.dims().to_string());
  }
  return out;
}

AuditReport perfect_audit(const PercolationTrace& trace, const CellSet& seeds) {
  AuditReport report;
  const GridDims& dims = trace.dims;
  auto note = [&](std::size_t i) {
    if (report.offending.size() < 8) report.offending.push_back(cell_at(dims, i));
  };
  seeds.for_each([&](std::size_t v) {
    for_each_neighbour(dims, v, [&](std::size_t u) {
      if (u > v && seeds.contains(u)) {
        report.seeds_independent = false;
        note(v);
      }
    });
  });
  for (std::size_t v = 0; v < trace.infection_time.size(); ++v) {
    const std::int32_t t = trace.infection_time[v];
    if (t == kNever || t == 0) continue;
    if (trace.neighbours_at_infection[v] != 3) {
      report.exact_three = false;
      note(v);
    }
    for_each_neighbour(dims, v, [&](std::size_t u) {
      if (u > v && trace.infection_time[u] == t) {
        report.no_simultaneous_adjacent = false;
        note(v);
      }
    });
  }
  // Frame-by-frame surface quantity, updated incrementally.
  std::vector<std::vector<std::uint32_t>> by_time(
      static_cast<std::size_t>(trace.steps_taken) + 1);
  for (std::size_t v = 0; v < trace.infection_time.size(); ++v) {
    if (trace.infection_time[v] != kNever) {
      by_time[static_cast<std::size_t>(trace.infection_time[v])].push_back(
          static_cast<std::uint32_t>(v));
    }
  }
  CellSet current(dims);
  std::int64_t surface = 0;
  std::int64_t initial = 0;
  for (std::size_t t = 0; t < by_time.size(); ++t) {
    for (std::uint32_t v : by_time[t]) current.insert(v);
    // Only new cells and their edges change n(A); recompute locally.
    std::int64_t delta = 0;
    for (std::uint32_t v : by_time[t]) {
      delta += 6;
      for_each_neighbour(dims, v, [&](std::size_t u) {
        if (!current.contains(u)) return;
        const bool u_new = trace.infection_time[u] == static_cast<std::int32_t>(t);
        // Edges between two new cells are seen from both ends.
        delta -= u_new ? 1 : 2;
      });
    }
    surface += delta;
    if (t == 0) {
      initial = surface;
    } else if (surface != initial) {
      report.surface_constant = false;
    }
  }
  return report;
}

}  // namespace perc
