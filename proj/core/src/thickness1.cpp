#include "perc/combine.hpp"
#include "perc/error.hpp"
#include "perc/search.hpp"

namespace perc {

CatalogEntry gen_thickness1(int k) {
  if (k < 1) throw InputError("k must be positive");
  if (k > 12) throw CapacityError("(1, 2^k-1, 2^k-1) exceeds the cell cap for k > 12");
  CellSet seeds(GridDims{1, 1, 1});
  seeds.insert(0);
  for (int level = 2; level <= k; ++level) {
    const int half = (1 << (level - 1)) - 1;
    const int side = 2 * half + 1;
    CellSet next(GridDims{1, side, side});
    place(next, seeds, 0, 0, 0);
    place(next, seeds, 0, half + 1, 0);
    place(next, seeds, 0, 0, half + 1);
    place(next, seeds, 0, half + 1, half + 1);
    next.insert(Cell{1, half + 1, half + 1});
    if (classify(next).status != Status::Perfect) {
      const SearchResult found =
          find_at_bound(next.dims(), lower_bound(next.dims()).ceil);
      if (!found.witness) {
        throw ConstructionError("no perfect witness for " + next.dims().to_string());
      }
      next = *found.witness;
    }
    seeds = std::move(next);
  }
  CatalogEntry out;
  out.dims = seeds.dims();
  out.seeds = std::move(seeds);
  out.status = Status::Perfect;
  out.provenance = Provenance::thickness1(k);
  out.verified = true;
  return out;
}

}  // namespace perc
