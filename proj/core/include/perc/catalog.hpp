#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "perc/bounds.hpp"
#include "perc/grid.hpp"

namespace perc {

struct Provenance {
  enum class Kind {
    SearchedExhaustive,
    SearchedHeuristic,
    Combined,
    Family,
    Thickness1,
  };

  Kind kind = Kind::SearchedHeuristic;
  std::uint64_t rng_seed = 0;     // SearchedHeuristic
  std::array<int, 4> children{};  // Combined: catalog ids of p1..p4
  std::string family;             // Family
  int family_c = 0;               // Family
  int k = 0;                      // Thickness1

  static Provenance exhaustive();
  static Provenance heuristic(std::uint64_t rng_seed);
  static Provenance combined(std::array<int, 4> children);
  static Provenance from_family(std::string id, int c);
  static Provenance thickness1(int k);

  std::string to_string() const;
  static Provenance parse(std::string_view text);

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct CatalogEntry {
  int id = 0;  // 0 until inserted into a catalog
  GridDims dims;
  CellSet seeds{GridDims{}};
  Status status = Status::Perfect;
  Provenance provenance;
  bool verified = false;
};

// Simulates the entry and checks that its size matches `status`.
bool reverify(const CatalogEntry& entry);

// Re-expresses an entry on a permutation of its grid.
CatalogEntry oriented(const CatalogEntry& entry, const GridDims& target);

// Witness store. Reads may run concurrently; inserts are serialized.
class Catalog {
 public:
  Catalog();
  Catalog(Catalog&&) noexcept;
  Catalog& operator=(Catalog&&) noexcept;
  ~Catalog();

  // Verified entries are re-simulated; a failure throws ConstructionError.
  static Catalog parse(std::string_view text);
  static Catalog load(const std::filesystem::path& path);

  std::string serialize() const;
  void save(const std::filesystem::path& path) const;

  // Assigns and returns the new id (ids start at 1 and are dense).
  int insert(CatalogEntry entry);

  // Lowest-id entry on some permutation of `dims` with status at least
  // `at_least`, re-oriented onto `dims`.
  std::optional<CatalogEntry> find(const GridDims& dims, Status at_least) const;
  std::optional<CatalogEntry> by_id(int id) const;
  std::vector<CatalogEntry> entries() const;
  std::size_t size() const;

 private:
  std::vector<CatalogEntry> entries_;
  std::unique_ptr<std::shared_mutex> mutex_;
};

// One entry as a record (shared with the search output).
std::string write_entry(const CatalogEntry& entry);

}  // namespace perc
