#include "perc/milestones.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "perc/error.hpp"

namespace perc {

Region make_region(const GridDims& dims, std::string name,
                   const std::function<bool(const Cell&)>& member) {
  Region out{std::move(name), CellSet(dims)};
  const auto n = static_cast<std::size_t>(dims.cells());
  for (std::size_t i = 0; i < n; ++i) {
    if (member(cell_at(dims, i))) out.cells.insert(i);
  }
  return out;
}

Region layer_region(const GridDims& dims, int x) {
  if (x < 1 || x > dims.a) throw InputError("layer " + std::to_string(x) + " out of range");
  return make_region(dims, "layer " + std::to_string(x),
                     [x](const Cell& c) { return c.x == x; });
}

Region column_region(const GridDims& dims, int z) {
  if (z < 1 || z > dims.c) throw InputError("column " + std::to_string(z) + " out of range");
  return make_region(dims, "column " + std::to_string(z),
                     [z](const Cell& c) { return c.z == z; });
}

Region whole_grid_region(const GridDims& dims) {
  return Region{"grid", CellSet::full(dims)};
}

Region seeds_region(const CellSet& seeds) { return Region{"seeds", seeds}; }

std::vector<Region> standard_regions(const CellSet& seeds) {
  const GridDims& d = seeds.dims();
  std::vector<Region> out;
  out.push_back(seeds_region(seeds));
  for (int x = 1; x <= d.a; ++x) out.push_back(layer_region(d, x));
  out.push_back(whole_grid_region(d));
  return out;
}

std::vector<Milestone> extract_milestones(const PercolationTrace& trace,
                                          std::span<const Region> regions) {
  if (trace.truncated) throw TruncatedSimulation("milestones need a complete trace");
  const auto& times = trace.infection_time;
  std::vector<Milestone> out;
  out.reserve(regions.size());
  for (const Region& r : regions) {
    if (r.cells.dims() != trace.dims) {
      throw InputError("region '" + r.name + "' is on " + r.cells.dims().to_string() +
                       ", trace is on " + trace.dims.to_string());
    }
    Milestone m{std::int64_t{0}, r.name, {}};
    r.cells.for_each([&](std::size_t i) {
      if (!m.time) return;
      if (times[i] == kNever) {
        m.time.reset();
      } else {
        m.time = std::max<std::int64_t>(*m.time, times[i]);
      }
    });
    out.push_back(std::move(m));
  }

  for (std::size_t k = 0; k < out.size(); ++k) {
    if (!out[k].time || *out[k].time == 0) continue;
    const std::int64_t t = *out[k].time;
    std::vector<bool> used(out.size(), false);
    regions[k].cells.for_each([&](std::size_t i) {
      if (times[i] != t) return;
      for_each_neighbour(trace.dims, i, [&](std::size_t n) {
        if (times[n] == kNever || times[n] >= t) return;
        for (std::size_t j = 0; j < out.size(); ++j) {
          if (j != k && out[j].time && *out[j].time < t && regions[j].cells.contains(n)) {
            used[j] = true;
          }
        }
      });
    });
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (used[j]) out[k].reasons.push_back(out[j].region);
    }
  }

  std::stable_sort(out.begin(), out.end(), [](const Milestone& l, const Milestone& r) {
    if (!l.time || !r.time) return l.time.has_value() && !r.time.has_value();
    return *l.time < *r.time;
  });
  return out;
}

namespace {

void write_rational(std::ostream& out, const Rational& q) {
  if (q.denominator() == 1) {
    out << q.numerator();
  } else {
    out << '(' << q.numerator() << '/' << q.denominator() << ')';
  }
}

}  // namespace

std::string AffineInC::to_string() const {
  std::ostringstream out;
  if (slope == Rational(0)) {
    write_rational(out, intercept);
    return out.str();
  }
  if (slope == Rational(-1)) {
    out << '-';
  } else if (slope != Rational(1)) {
    write_rational(out, slope);
  }
  out << 'c';
  if (intercept > 0) {
    out << " + ";
    write_rational(out, intercept);
  } else if (intercept < 0) {
    out << " - ";
    write_rational(out, -intercept);
  }
  return out.str();
}

std::optional<AffineInC> fit_affine(
    std::span<const std::pair<std::int64_t, std::int64_t>> points) {
  if (points.size() < 2) return std::nullopt;
  const auto [c0, t0] = points[0];
  const auto [c1, t1] = points[1];
  if (c0 == c1) throw InputError("affine fit needs distinct c values");
  AffineInC f;
  f.slope = Rational(t1 - t0, c1 - c0);
  f.intercept = Rational(t0) - f.slope * c0;
  for (const auto& [c, t] : points) {
    if (f.at(c) != Rational(t)) return std::nullopt;
  }
  return f;
}

std::vector<FamilyMilestone> family_milestones(const FamilyPattern& pattern,
                                               std::span<const int> cs,
                                               const RegionsForGrid& regions) {
  std::vector<FamilyMilestone> out;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const CellSet seeds = assemble_seeds(pattern, cs[k]);
    const PercolationTrace trace = percolate(seeds);
    const std::vector<Region> rs = regions(seeds);
    const std::vector<Milestone> ms = extract_milestones(trace, rs);
    if (k == 0) {
      for (const Region& r : rs) out.push_back(FamilyMilestone{r.name, {}, {}});
    }
    for (FamilyMilestone& fm : out) {
      const auto it = std::find_if(ms.begin(), ms.end(),
                                   [&](const Milestone& m) { return m.region == fm.region; });
      if (it == ms.end()) {
        throw InputError("region '" + fm.region + "' missing at c=" + std::to_string(cs[k]));
      }
      fm.times.push_back(it->time);
    }
  }
  for (FamilyMilestone& fm : out) {
    std::vector<std::pair<std::int64_t, std::int64_t>> points;
    for (std::size_t k = 0; k < fm.times.size(); ++k) {
      if (!fm.times[k]) break;
      points.emplace_back(cs[k], *fm.times[k]);
    }
    if (points.size() == fm.times.size()) fm.time = fit_affine(points);
  }
  return out;
}

}  // namespace perc
