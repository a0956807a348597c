#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "perc/engine.hpp"
#include "perc/families.hpp"

namespace perc {

struct Region {
  std::string name;
  CellSet cells{GridDims{}};
};

Region make_region(const GridDims& dims, std::string name,
                   const std::function<bool(const Cell&)>& member);
Region layer_region(const GridDims& dims, int x);
Region column_region(const GridDims& dims, int z);
Region whole_grid_region(const GridDims& dims);
Region seeds_region(const CellSet& seeds);
// Seeds, every layer, and the whole grid.
std::vector<Region> standard_regions(const CellSet& seeds);

struct Milestone {
  std::optional<std::int64_t> time;  // nullopt: never completes
  std::string region;
  // Earlier milestones whose regions hold a neighbour of a cell that
  // completed this region.
  std::vector<std::string> reasons;
};

// First time each region is fully infected, sorted by time (never last,
// ties in input order).
std::vector<Milestone> extract_milestones(const PercolationTrace& trace,
                                          std::span<const Region> regions);

// Compare only against Rational values: with Boost 1.74 under C++20,
// rational == integer recurses without end.
using Rational = boost::rational<std::int64_t>;

// slope·c + intercept
struct AffineInC {
  Rational slope{0};
  Rational intercept{0};

  Rational at(std::int64_t c) const { return slope * c + intercept; }
  std::string to_string() const;
  friend bool operator==(const AffineInC&, const AffineInC&) = default;
};

// Exact line through the first two points; nullopt if any other point is
// off the line or fewer than two points are given.
std::optional<AffineInC> fit_affine(std::span<const std::pair<std::int64_t, std::int64_t>> points);

struct FamilyMilestone {
  std::string region;
  // Per-instance completion times, aligned with the c values.
  std::vector<std::optional<std::int64_t>> times;
  // Set when every instance completes and the times are affine in c.
  std::optional<AffineInC> time;
};

using RegionsForGrid = std::function<std::vector<Region>(const CellSet& seeds)>;

// Simulates the assemblies for each c and fits every region's completion
// time. Regions are matched across instances by name, in the order the
// first instance produces them.
std::vector<FamilyMilestone> family_milestones(const FamilyPattern& pattern,
                                               std::span<const int> cs,
                                               const RegionsForGrid& regions);

}  // namespace perc
