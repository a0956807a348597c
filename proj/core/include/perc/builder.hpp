#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>

#include "perc/catalog.hpp"
#include "perc/families.hpp"
#include "perc/recipes.hpp"
#include "perc/search.hpp"

namespace perc {

struct BuildOptions {
  // Search for leaves that nothing else supplies.
  bool allow_search = false;
  AtBoundOptions search;
  // Leaves larger than this are never searched.
  std::size_t search_cell_limit = 400;
  // Largest grid the builder will assemble.
  std::size_t cell_limit = 1u << 16;
};

// Supplies witnesses from the catalog, thickness-1 doubling, periodic
// families, the dispatch recipes and octant splits, in that order.
// Everything it builds is inserted into the catalog.
class Builder {
 public:
  Builder(Catalog& catalog, const std::map<std::string, FamilyPattern>& families,
          BuildOptions options = {});

  // A verified witness on `dims` (any orientation) with status >= need.
  // Throws DependencyError naming a grid nothing can supply.
  CatalogEntry obtain(const GridDims& dims, Status need);

  // Always dispatch through the recipe for the top-level grid.
  CatalogEntry build_perfect_4(int b, int c);
  CatalogEntry build_optimal(int a, int b, int c);
  CatalogEntry build_recipe(const Recipe& recipe);

  // Whether `obtain` would succeed without running any search.
  bool available(const GridDims& dims, Status need);

  // Indented plan, one grid per line.
  std::string explain(const GridDims& dims, Status need);

  // Leaves searched during this builder's lifetime.
  std::size_t searches() const noexcept { return searches_; }

 private:
  struct Plan {
    enum class Source { Catalog, Thickness1, Family, Recipe, Search } source;
    Recipe recipe;  // Family, Recipe (Split or Stored)
    int k = 0;      // Thickness1
  };
  using Key = std::tuple<int, int, int, int>;

  static Status normalize(const GridDims& sorted, Status need);
  const std::optional<Plan>& plan(const GridDims& sorted, Status need, bool search);
  std::optional<Plan> make_plan(const GridDims& sorted, Status need, bool search);
  bool recipe_plannable(const Recipe& recipe, bool search);
  std::optional<Recipe> generic_split(const GridDims& sorted, Status need, bool search);
  std::optional<Recipe> dispatch(const GridDims& sorted, Status need);
  CatalogEntry realize(const GridDims& sorted, Status need, bool search);
  CatalogEntry realize_recipe(const Recipe& recipe, bool search);
  CatalogEntry search_leaf(const GridDims& sorted, Status need);
  CatalogEntry record(CatalogEntry entry);
  std::string missing(const GridDims& sorted, Status need, int depth);
  void explain(const GridDims& sorted, Status need, int depth, std::string& out);
  void check_capacity(const GridDims& dims) const;

  Catalog& catalog_;
  const std::map<std::string, FamilyPattern>& families_;
  BuildOptions options_;
  std::map<std::pair<Key, bool>, std::optional<Plan>> memo_;
  std::set<Key> failed_searches_;
  std::size_t searches_ = 0;
};

}  // namespace perc
