#include "perc/builder.hpp"

#include <bit>

#include "perc/combine.hpp"
#include "perc/error.hpp"

namespace perc {
namespace {

// Thrown when a planned search fails; the caller replans without it.
struct SearchMiss {
  GridDims dims;
};

std::string with_need(const GridDims& dims, Status need) {
  return dims.to_string() + " " + std::string(to_string(need));
}

// Leaves whose minimum is known to exceed the bound: thickness-1 grids
// other than the doubling squares, (2,2,c) where the closed form is above
// the bound, and (2,3,3).
bool known_unattainable(const GridDims& s) {
  if (s.a == 1) return true;
  if (s.a == 2 && s.b == 2) return min_22c(s.c) > lower_bound(s).ceil;
  return s == GridDims{2, 3, 3};
}

bool perfect4_applies(const GridDims& s) {
  return s.a == 4 && (s.b - s.c) % 3 == 0 && (s.b % 3 == 0 || s.b % 3 == 1);
}

}  // namespace

Builder::Builder(Catalog& catalog, const std::map<std::string, FamilyPattern>& families,
                 BuildOptions options)
    : catalog_(catalog), families_(families), options_(options) {}

Status Builder::normalize(const GridDims& sorted, Status need) {
  if (need < Status::Optimal) need = Status::Optimal;
  if (lower_bound(sorted).integral()) need = Status::Perfect;
  return need;
}

void Builder::check_capacity(const GridDims& dims) const {
  if (static_cast<std::size_t>(dims.cells()) > options_.cell_limit) {
    throw CapacityError("grid " + dims.to_string() + " has " + std::to_string(dims.cells()) +
                        " cells, builder limit is " + std::to_string(options_.cell_limit));
  }
}

std::optional<Recipe> Builder::dispatch(const GridDims& s, Status need) {
  if (perfect4_applies(s) && need == Status::Perfect) return perfect4_recipe(s.b, s.c);
  if (s.a >= 7) {
    Recipe r = optimal_recipe(s.a, s.b, s.c);
    if (r.kind != Recipe::Kind::Generic) return r;
  }
  return std::nullopt;
}

bool Builder::recipe_plannable(const Recipe& r, bool search) {
  switch (r.kind) {
    case Recipe::Kind::Family:
      return families_.contains(r.family);
    case Recipe::Kind::Stored:
      return catalog_.find(r.dims, r.need).has_value();
    case Recipe::Kind::Split: {
      const auto parts = r.parts();
      for (int i = 0; i < 4; ++i) {
        if (!plan(parts[i].sorted(), r.part_need(i), search)) return false;
      }
      return true;
    }
    case Recipe::Kind::Generic:
      return generic_split(r.dims, r.need, search).has_value();
  }
  return false;
}

std::optional<Recipe> Builder::generic_split(const GridDims& s, Status need, bool search) {
  for (int a1 = 1; a1 < s.a; ++a1) {
    for (int b1 = 1; b1 < s.b; ++b1) {
      for (int c1 = 1; c1 < s.c; ++c1) {
        const auto parts = octant_parts(s, a1, b1, c1);
        bool ok = true;
        for (int i = 1; i < 4 && ok; ++i) ok = perfect_precondition(parts[i]);
        for (int i = 0; i < 4 && ok; ++i) {
          ok = plan(parts[i].sorted(), i == 0 ? need : Status::Perfect, search).has_value();
        }
        if (ok) {
          Recipe r;
          r.dims = s;
          r.need = need;
          r.kind = Recipe::Kind::Split;
          r.split = {a1, b1, c1};
          r.rule = "recursive split at (" + std::to_string(a1) + "," + std::to_string(b1) +
                   "," + std::to_string(c1) + ")";
          return r;
        }
      }
    }
  }
  return std::nullopt;
}

const std::optional<Builder::Plan>& Builder::plan(const GridDims& sorted, Status need,
                                                  bool search) {
  need = normalize(sorted, need);
  const auto key = std::make_pair(
      Key{sorted.a, sorted.b, sorted.c, static_cast<int>(need)}, search);
  if (auto it = memo_.find(key); it != memo_.end()) {
    if (it->second || !catalog_.find(sorted, need)) return it->second;
  }
  // Provisional entry: parts are strictly smaller, so a repeat visit only
  // happens through a catalog change and is safe to treat as unavailable.
  memo_[key] = std::nullopt;
  auto made = make_plan(sorted, need, search);
  return memo_[key] = std::move(made);
}

std::optional<Builder::Plan> Builder::make_plan(const GridDims& s, Status need, bool search) {
  if (need == Status::Perfect && !perfect_precondition(s)) return std::nullopt;
  if (catalog_.find(s, need)) return Plan{Plan::Source::Catalog, {}, 0};
  if (s.a == 1 && s.b == s.c && std::has_single_bit(static_cast<unsigned>(s.b + 1))) {
    const int k = std::countr_zero(static_cast<unsigned>(s.b + 1));
    if (k <= 12) return Plan{Plan::Source::Thickness1, {}, k};
  }
  for (const auto& [id, pattern] : families_) {
    if (pattern.spec.a == s.a && pattern.spec.b == s.b && pattern.spec.admits(s.c)) {
      Recipe r;
      r.dims = s;
      r.kind = Recipe::Kind::Family;
      r.family = id;
      r.family_c = s.c;
      r.rule = "periodic family " + id;
      return Plan{Plan::Source::Family, r, 0};
    }
  }
  if (auto r = dispatch(s, need); r && recipe_plannable(*r, search)) {
    return Plan{Plan::Source::Recipe, *r, 0};
  }
  const Key key{s.a, s.b, s.c, static_cast<int>(need)};
  const bool searchable = search && static_cast<std::size_t>(s.cells()) <= options_.search_cell_limit &&
                          !failed_searches_.contains(key) && !known_unattainable(s);
  if (searchable) return Plan{Plan::Source::Search, {}, 0};
  if (s.cells() > 1) {
    if (auto r = generic_split(s, need, search)) return Plan{Plan::Source::Recipe, *r, 0};
  }
  return std::nullopt;
}

CatalogEntry Builder::record(CatalogEntry entry) {
  if (auto existing = catalog_.find(entry.dims, entry.status)) return *existing;
  entry.id = catalog_.insert(entry);
  return entry;
}

CatalogEntry Builder::search_leaf(const GridDims& s, Status need) {
  ++searches_;
  const std::int64_t target = lower_bound(s).ceil;
  CatalogEntry e;
  e.dims = s;
  if (s.cells() <= kExhaustiveCellCap) {
    const SearchResult res = min_exhaustive(s);
    if (res.mode != SearchMode::ExhaustiveProven || *res.min_size != target) throw SearchMiss{s};
    e.seeds = *res.witness;
    e.provenance = Provenance::exhaustive();
  } else {
    const SearchResult res = find_at_bound(s, target, options_.search);
    if (res.mode != SearchMode::HeuristicWitness) throw SearchMiss{s};
    e.seeds = *res.witness;
    e.provenance = Provenance::heuristic(options_.search.rng_seed);
  }
  e.status = classify(e.seeds).status;
  if (e.status < need) throw SearchMiss{s};
  e.verified = true;
  return record(std::move(e));
}

CatalogEntry Builder::realize_recipe(const Recipe& r, bool search) {
  check_capacity(r.dims);
  switch (r.kind) {
    case Recipe::Kind::Family: {
      const auto it = families_.find(r.family);
      if (it == families_.end()) {
        throw DependencyError(r.dims.to_string(),
                              "family " + r.family + " is not loaded; cannot build " +
                                  r.dims.to_string());
      }
      return record(assemble_family(it->second, r.family_c));
    }
    case Recipe::Kind::Stored: {
      auto e = catalog_.find(r.dims, r.need);
      if (!e) {
        throw DependencyError(r.dims.to_string(),
                              "no stored witness for " + with_need(r.dims, r.need));
      }
      return *e;
    }
    case Recipe::Kind::Split: {
      const auto parts = r.parts();
      std::array<CatalogEntry, 4> got;
      for (int i = 0; i < 4; ++i) {
        got[i] = oriented(realize(parts[i].sorted(), r.part_need(i), search), parts[i]);
      }
      return record(combine(got[0], got[1], got[2], got[3]));
    }
    case Recipe::Kind::Generic: {
      auto split = generic_split(r.dims, r.need, search);
      if (!split) {
        throw DependencyError(r.dims.to_string(),
                              "no split of " + with_need(r.dims, r.need) + " is available");
      }
      return realize_recipe(*split, search);
    }
  }
  throw std::logic_error("unknown recipe kind");
}

CatalogEntry Builder::realize(const GridDims& s, Status need, bool search) {
  need = normalize(s, need);
  if (auto e = catalog_.find(s, need)) return *e;
  const auto& p = plan(s, need, search);
  if (!p) {
    const std::string leaf = missing(s, need, 0);
    throw DependencyError(leaf, "missing witness for " + leaf + " (needed for " +
                                    with_need(s, need) + ")");
  }
  const Plan chosen = *p;
  switch (chosen.source) {
    case Plan::Source::Catalog:
      return *catalog_.find(s, need);
    case Plan::Source::Thickness1:
      return record(gen_thickness1(chosen.k));
    case Plan::Source::Family:
    case Plan::Source::Recipe:
      return realize_recipe(chosen.recipe, search);
    case Plan::Source::Search:
      return search_leaf(s, need);
  }
  throw std::logic_error("unknown plan source");
}

std::string Builder::missing(const GridDims& s, Status need, int depth) {
  need = normalize(s, need);
  if (depth > 8) return with_need(s, need);
  if (need == Status::Perfect && !perfect_precondition(s)) return with_need(s, need);
  if (auto r = dispatch(s, need); r && r->kind == Recipe::Kind::Split) {
    const auto parts = r->parts();
    for (int i = 0; i < 4; ++i) {
      if (!plan(parts[i].sorted(), r->part_need(i), false)) {
        return missing(parts[i].sorted(), r->part_need(i), depth + 1);
      }
    }
  }
  return with_need(s, need);
}

CatalogEntry Builder::obtain(const GridDims& dims, Status need) {
  check_capacity(dims);
  const GridDims s = dims.sorted();
  for (;;) {
    try {
      const bool search = options_.allow_search && !plan(s, need, false);
      return oriented(realize(s, need, search), dims);
    } catch (const SearchMiss& miss) {
      const GridDims m = miss.dims;
      for (int st : {static_cast<int>(Status::Optimal), static_cast<int>(Status::Perfect)}) {
        failed_searches_.insert(Key{m.a, m.b, m.c, st});
      }
      memo_.clear();
    }
  }
}

CatalogEntry Builder::build_recipe(const Recipe& recipe) {
  for (;;) {
    try {
      const bool search = options_.allow_search && !recipe_plannable(recipe, false);
      CatalogEntry e = realize_recipe(recipe, search);
      if (e.status < recipe.need) {
        throw ConstructionError(recipe.dims.to_string() + " came out " +
                                std::string(to_string(e.status)));
      }
      return e;
    } catch (const SearchMiss& miss) {
      const GridDims m = miss.dims;
      for (int st : {static_cast<int>(Status::Optimal), static_cast<int>(Status::Perfect)}) {
        failed_searches_.insert(Key{m.a, m.b, m.c, st});
      }
      memo_.clear();
    }
  }
}

CatalogEntry Builder::build_perfect_4(int b, int c) {
  const GridDims dims = GridDims::make(4, b, c);
  check_capacity(dims);
  const Recipe r = perfect4_recipe(b, c);
  CatalogEntry e = build_recipe(r);
  return oriented(e, dims);
}

CatalogEntry Builder::build_optimal(int a, int b, int c) {
  const GridDims dims = GridDims::make(a, b, c);
  check_capacity(dims);
  const GridDims s = dims.sorted();
  if (s != dims) {
    throw InputError("build_optimal expects a <= b <= c, got " + dims.to_string());
  }
  return build_recipe(optimal_recipe(a, b, c));
}

bool Builder::available(const GridDims& dims, Status need) {
  return plan(dims.sorted(), need, false).has_value();
}

void Builder::explain(const GridDims& s, Status need, int depth, std::string& out) {
  need = normalize(s, need);
  out += std::string(static_cast<std::size_t>(depth) * 2, ' ') + with_need(s, need) + ": ";
  const auto& p = plan(s, need, options_.allow_search);
  if (!p) {
    out += "unavailable\n";
    return;
  }
  const Plan chosen = *p;
  switch (chosen.source) {
    case Plan::Source::Catalog: {
      const auto e = catalog_.find(s, need);
      out += "catalog entry " + std::to_string(e->id) + "\n";
      return;
    }
    case Plan::Source::Thickness1:
      out += "thickness-1 doubling k=" + std::to_string(chosen.k) + "\n";
      return;
    case Plan::Source::Search:
      out += "search\n";
      return;
    case Plan::Source::Family:
    case Plan::Source::Recipe:
      break;
  }
  out += chosen.recipe.rule + "\n";
  if (chosen.recipe.kind == Recipe::Kind::Split) {
    const auto parts = chosen.recipe.parts();
    for (int i = 0; i < 4; ++i) {
      explain(parts[i].sorted(), chosen.recipe.part_need(i), depth + 1, out);
    }
  }
}

std::string Builder::explain(const GridDims& dims, Status need) {
  std::string out;
  explain(dims.sorted(), need, 0, out);
  return out;
}

}  // namespace perc
