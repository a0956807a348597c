#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "perc/engine.hpp"
#include "perc/grid.hpp"

namespace perc {

// |A_0| >= (ab+ac+bc)/3 for any 3-neighbour percolating set.
struct LowerBound {
  std::int64_t numerator = 0;  // ab + ac + bc
  static constexpr std::int64_t denominator = 3;
  std::int64_t ceil = 0;

  bool integral() const noexcept { return numerator % denominator == 0; }
  boost::rational<std::int64_t> exact() const {
    return {numerator, denominator};
  }
  // "114/3 = 38" or "203/3".
  std::string to_string() const;
};

LowerBound lower_bound(const GridDims& dims);

// 3 | ab+ac+bc, decided by residues: two sides divisible by three, or all
// three sides congruent mod 3.
bool perfect_precondition(const GridDims& dims);

// Ordered: Perfect implies Optimal implies Percolating.
enum class Status { NotPercolating = 0, Percolating = 1, Optimal = 2, Perfect = 3 };

std::string_view to_string(Status status);
Status parse_status(std::string_view text);

struct Classification {
  bool percolates = false;
  std::int64_t size = 0;
  LowerBound bound;
  Status status = Status::NotPercolating;
  int steps = 0;
};

// Runs the 3-neighbour process. Throws TruncatedSimulation rather than
// reporting a truncated run as non-percolating.
Classification classify(const CellSet& seeds);
Classification classify(const PercolationTrace& trace, const CellSet& seeds);

// Tightness analysis of a trace against the equality case of the surface
// bound.
struct AuditReport {
  bool seeds_independent = true;
  bool exact_three = true;               // every new cell had exactly 3 in A_{t-1}
  bool no_simultaneous_adjacent = true;  // no edge inside A_t \ A_{t-1}
  bool surface_constant = true;          // 6|A_t| - n(A_t) never dropped
  std::vector<Cell> offending;           // first few witnesses of failures

  bool all_hold() const noexcept {
    return seeds_independent && exact_three && no_simultaneous_adjacent;
  }
};

AuditReport perfect_audit(const PercolationTrace& trace, const CellSet& seeds);

}  // namespace perc
