#include "perc/combine.hpp"

#include <sstream>

#include "perc/error.hpp"
#include "perc/symmetry.hpp"

namespace perc {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError("combine: " + what);
}

}  // namespace

std::array<GridDims, 4> octant_parts(const GridDims& total, int a1, int b1, int c1) {
  const int a2 = total.a - a1, b2 = total.b - b1, c2 = total.c - c1;
  if (a1 < 1 || b1 < 1 || c1 < 1 || a2 < 1 || b2 < 1 || c2 < 1) {
    throw InputError("split (" + std::to_string(a1) + "," + std::to_string(b1) +
                     "," + std::to_string(c1) + ") is not interior to " +
                     total.to_string());
  }
  return {GridDims{a1, b1, c1}, GridDims{a2, b2, c1}, GridDims{a2, b1, c2},
          GridDims{a1, b2, c2}};
}

CatalogEntry combine(const CatalogEntry& p1, const CatalogEntry& p2,
                     const CatalogEntry& p3, const CatalogEntry& p4) {
  const int a1 = p1.dims.a, b1 = p1.dims.b, c1 = p1.dims.c;
  const int a2 = p2.dims.a, b2 = p2.dims.b, c2 = p3.dims.c;
  require(p2.dims.c == c1, "p2 must share c1 with p1");
  require(p3.dims.a == a2 && p3.dims.b == b1, "p3 must be (a2,b1,c2)");
  require(p4.dims.a == a1 && p4.dims.b == b2 && p4.dims.c == c2,
          "p4 must be (a1,b2,c2)");
  for (const CatalogEntry* p : {&p2, &p3, &p4}) {
    require(p->status == Status::Perfect,
            "part on " + p->dims.to_string() + " must be perfect");
  }
  require(p1.status >= Status::Optimal, "p1 must be perfect or optimal");

  const GridDims total = GridDims::make(a1 + a2, b1 + b2, c1 + c2);
  const Status claimed = p1.status == Status::Perfect ? Status::Perfect : Status::Optimal;
  const auto& orientations = all_orientations();
  std::ostringstream diagnostics;
  // Indices 0..7 are the reflections with the identity permutation.
  for (std::size_t o = 0; o < 8; ++o) {
    const Orientation& r = orientations[o];
    CellSet seeds(total);
    place(seeds, apply(r, p1.seeds), 0, 0, 0);
    place(seeds, apply(r, p2.seeds), a1, b1, 0);
    place(seeds, apply(r, p3.seeds), a1, 0, c1);
    place(seeds, apply(r, p4.seeds), 0, b1, c1);
    const PercolationTrace trace = percolate(seeds);
    const Classification cls = classify(trace, seeds);
    if (cls.status >= claimed) {
      CatalogEntry out;
      out.dims = total;
      out.seeds = std::move(seeds);
      out.status = claimed;
      out.provenance = Provenance::combined({p1.id, p2.id, p3.id, p4.id});
      out.verified = true;
      return out;
    }
    diagnostics << " reflection " << o << ": " << trace.infected_count() << "/"
                << total.cells() << " infected, status " << to_string(cls.status)
                << ";";
  }
  throw ConstructionError("combine into " + total.to_string() +
                          " failed in every orientation:" + diagnostics.str());
}

}  // namespace perc
