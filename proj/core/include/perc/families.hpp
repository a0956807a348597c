#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "perc/anneal.hpp"
#include "perc/catalog.hpp"
#include "perc/error.hpp"

namespace perc {

// A one-parameter family of perfect seed sets on (a, b, c) for
// c ≡ residue (mod 6), c >= min_c.
struct FamilySpec {
  std::string id;
  int a = 0;
  int b = 0;
  int residue = 0;
  int min_c = 0;

  bool admits(int c) const noexcept {
    return c >= min_c && ((c - residue) % 6 + 6) % 6 == 0;
  }
  // Number of seeds in one 6-column block: 2(a+b).
  int block_seeds() const noexcept { return 2 * (a + b); }
};

// 2x5, 2x6, 2x8, 4x4c1, 4x4c4, 4x7c1, 4x7c4.
const std::vector<FamilySpec>& known_families();
const FamilySpec& family_spec(std::string_view id);

struct DiscoveryInfo {
  std::uint64_t rng_seed = 0;
  std::uint64_t trial = 0;
  std::uint64_t moves = 0;
};

// Left boundary columns, a 6-column block repeated (c - min_c)/6 times,
// right boundary columns.
struct FamilyPattern {
  FamilySpec spec;
  CellSet left{GridDims{}};
  CellSet block{GridDims{}};
  CellSet right{GridDims{}};
  DiscoveryInfo discovery;

  int left_width() const noexcept { return left.dims().c; }
  int right_width() const noexcept { return right.dims().c; }
};

// Shape and seed-count checks; throws InputError. A block without exactly
// 2(a+b) seeds is rejected here, before any simulation.
void validate_pattern(const FamilyPattern& pattern);

// Seeds of the assembled grid, without simulation.
CellSet assemble_seeds(const FamilyPattern& pattern, int c);

// Assembles and simulates; throws ConstructionError if the result is not
// perfect.
CatalogEntry assemble_family(const FamilyPattern& pattern, int c);

struct DiscoveryOptions {
  AnnealParams anneal{2.0, 0.05, 0.99999, 4'000'000, 2'000'000};
  std::uint64_t budget = 2'000'000'000;  // total moves
  std::uint64_t rng_seed = 1;
  int instances = 3;  // smallest admissible c values checked jointly
  unsigned threads = 1;
};

class DiscoveryFailed : public Error {
 public:
  DiscoveryFailed(FamilyPattern best, std::int64_t cost, std::uint64_t moves);

  const FamilyPattern& best() const noexcept { return best_; }
  std::int64_t cost() const noexcept { return cost_; }
  std::uint64_t moves() const noexcept { return moves_; }

 private:
  FamilyPattern best_;
  std::int64_t cost_;
  std::uint64_t moves_;
};

// Anneals boundary and block seeds jointly so that the assemblies for the
// first `instances` admissible c all percolate. Successive trials cycle
// through the possible left/right boundary widths.
FamilyPattern discover_family(const FamilySpec& spec,
                              const DiscoveryOptions& options = {});

std::string write_family(const FamilyPattern& pattern);
FamilyPattern parse_family(std::string_view text);

// Every *.family file in `dir`, keyed by family id.
std::map<std::string, FamilyPattern> load_family_library(
    const std::filesystem::path& dir);

}  // namespace perc
