#include "perc/families.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <memory>
#include <sstream>

#include "perc/bounds.hpp"
#include "perc/engine.hpp"
#include "perc/error.hpp"
#include "perc/text_format.hpp"

namespace perc {
namespace {

constexpr std::string_view kMagic = "perc-family 1";

std::int64_t boundary_seeds(const FamilySpec& spec) {
  return lower_bound(GridDims{spec.a, spec.b, spec.min_c}).numerator / 3;
}

// Column of a boundary column index (0..min_c-1) in a grid with c columns.
int boundary_column(int col, int left_width, int min_c, int c) {
  return col < left_width ? col : c - min_c + col;
}

}  // namespace

const std::vector<FamilySpec>& known_families() {
  static const std::vector<FamilySpec> table{
      {"2x5", 2, 5, 5, 5},    {"2x6", 2, 6, 0, 6},    {"2x8", 2, 8, 2, 8},
      {"4x4c1", 4, 4, 1, 7},  {"4x4c4", 4, 4, 4, 10}, {"4x7c1", 4, 7, 1, 7},
      {"4x7c4", 4, 7, 4, 10},
  };
  return table;
}

const FamilySpec& family_spec(std::string_view id) {
  for (const FamilySpec& s : known_families()) {
    if (s.id == id) return s;
  }
  throw InputError("unknown family '" + std::string(id) + "'");
}

void validate_pattern(const FamilyPattern& p) {
  const FamilySpec& s = p.spec;
  auto check_shape = [&](const CellSet& part, const char* name) {
    if (part.dims().a != s.a || part.dims().b != s.b) {
      throw InputError(std::string(name) + " fragment of family " + s.id +
                       " must have " + std::to_string(s.a) + " layers and " +
                       std::to_string(s.b) + " rows");
    }
  };
  check_shape(p.left, "left");
  check_shape(p.block, "block");
  check_shape(p.right, "right");
  if (p.block.dims().c != 6) {
    throw InputError("block of family " + s.id + " must span 6 columns");
  }
  if (static_cast<int>(p.block.size()) != s.block_seeds()) {
    throw InputError("block of family " + s.id + " has " +
                     std::to_string(p.block.size()) + " seeds, expected 2(a+b) = " +
                     std::to_string(s.block_seeds()));
  }
  if (p.left_width() + p.right_width() != s.min_c) {
    throw InputError("boundary widths of family " + s.id + " must sum to " +
                     std::to_string(s.min_c));
  }
  const auto boundary = static_cast<std::int64_t>(p.left.size() + p.right.size());
  if (boundary != boundary_seeds(s)) {
    throw InputError("boundary of family " + s.id + " has " +
                     std::to_string(boundary) + " seeds, expected " +
                     std::to_string(boundary_seeds(s)));
  }
}

CellSet assemble_seeds(const FamilyPattern& p, int c) {
  const FamilySpec& s = p.spec;
  if (!s.admits(c)) {
    throw InputError("family " + s.id + " needs c ≡ " + std::to_string(s.residue) +
                     " (mod 6) and c >= " + std::to_string(s.min_c) + ", got " +
                     std::to_string(c));
  }
  validate_pattern(p);
  CellSet seeds(GridDims::make(s.a, s.b, c));
  place(seeds, p.left, 0, 0, 0);
  const int blocks = (c - s.min_c) / 6;
  for (int j = 0; j < blocks; ++j) place(seeds, p.block, 0, 0, p.left_width() + 6 * j);
  place(seeds, p.right, 0, 0, c - p.right_width());
  return seeds;
}

CatalogEntry assemble_family(const FamilyPattern& p, int c) {
  CellSet seeds = assemble_seeds(p, c);
  const Classification cls = classify(seeds);
  if (cls.status != Status::Perfect) {
    throw ConstructionError("family " + p.spec.id + " pattern rejected at c=" +
                            std::to_string(c) + ": status " +
                            std::string(to_string(cls.status)));
  }
  CatalogEntry out;
  out.dims = seeds.dims();
  out.seeds = std::move(seeds);
  out.status = Status::Perfect;
  out.provenance = Provenance::from_family(p.spec.id, c);
  out.verified = true;
  return out;
}

DiscoveryFailed::DiscoveryFailed(FamilyPattern best, std::int64_t cost,
                                 std::uint64_t moves)
    : Error("family " + best.spec.id + ": budget exhausted after " +
            std::to_string(moves) + " moves; best candidate leaves " +
            std::to_string(cost) + " cells uninfected"),
      best_(std::move(best)),
      cost_(cost),
      moves_(moves) {}

namespace {

// Splits the boundary width: trial t uses left width 1 + t mod (min_c-1).
int left_width_for_trial(const FamilySpec& s, std::uint64_t trial) {
  return 1 + static_cast<int>(trial % static_cast<std::uint64_t>(s.min_c - 1));
}

FamilyPattern pattern_from_selection(const FamilySpec& s, int left_width,
                                     const Selection& sel) {
  const int slice = s.a * s.b;
  FamilyPattern p;
  p.spec = s;
  p.left = CellSet(GridDims{s.a, s.b, left_width});
  p.right = CellSet(GridDims{s.a, s.b, s.min_c - left_width});
  p.block = CellSet(GridDims{s.a, s.b, 6});
  for (std::uint32_t e : sel[0]) {
    const int col = static_cast<int>(e) / slice;
    const int cell = static_cast<int>(e) % slice;
    const Cell where{cell / s.b + 1, cell % s.b + 1, 0};
    if (col < left_width) {
      p.left.insert(Cell{where.x, where.y, col + 1});
    } else {
      p.right.insert(Cell{where.x, where.y, col - left_width + 1});
    }
  }
  for (std::uint32_t e : sel[1]) {
    const int col = static_cast<int>(e) / slice;
    const int cell = static_cast<int>(e) % slice;
    p.block.insert(Cell{cell / s.b + 1, cell % s.b + 1, col + 1});
  }
  return p;
}

}  // namespace

FamilyPattern discover_family(const FamilySpec& s, const DiscoveryOptions& options) {
  if (options.instances < 1) throw InputError("need at least one instance");
  if (s.min_c < 2) throw InputError("family " + s.id + " has no boundary split");
  const int slice = s.a * s.b;
  const std::vector<SubsetGroup> groups{
      {static_cast<std::uint32_t>(slice * s.min_c),
       static_cast<std::uint32_t>(boundary_seeds(s))},
      {static_cast<std::uint32_t>(slice * 6),
       static_cast<std::uint32_t>(s.block_seeds())}};

  const CostFactory factory = [&s, &options, slice](std::uint64_t trial) -> CostFn {
    const int left = left_width_for_trial(s, trial);
    auto kernels = std::make_shared<std::vector<ClosureKernel>>();
    for (int k = 0; k < options.instances; ++k) {
      kernels->emplace_back(GridDims{s.a, s.b, s.min_c + 6 * k});
    }
    auto seeds = std::make_shared<std::vector<std::uint32_t>>();
    return [&s, kernels, seeds, left, slice](const Selection& sel) {
      std::int64_t total = 0;
      for (std::size_t k = 0; k < kernels->size(); ++k) {
        const int c = s.min_c + 6 * static_cast<int>(k);
        seeds->clear();
        for (std::uint32_t e : sel[0]) {
          const int col = static_cast<int>(e) / slice;
          const int cell = static_cast<int>(e) % slice;
          seeds->push_back(static_cast<std::uint32_t>(
              cell * c + boundary_column(col, left, s.min_c, c)));
        }
        for (std::size_t j = 0; j < k; ++j) {
          for (std::uint32_t e : sel[1]) {
            const int col = static_cast<int>(e) / slice;
            const int cell = static_cast<int>(e) % slice;
            seeds->push_back(static_cast<std::uint32_t>(
                cell * c + left + 6 * static_cast<int>(j) + col));
          }
        }
        total += static_cast<std::int64_t>((*kernels)[k].uninfected(*seeds));
      }
      return total;
    };
  };
  const AnnealOutcome outcome = anneal_subsets(groups, factory, options.anneal,
                                               options.rng_seed, options.budget,
                                               options.threads);
  FamilyPattern pattern = pattern_from_selection(
      s, left_width_for_trial(s, outcome.best_trial), outcome.best);
  pattern.discovery = DiscoveryInfo{options.rng_seed, outcome.best_trial, outcome.moves};
  if (!outcome.success) throw DiscoveryFailed(pattern, outcome.best_cost, outcome.moves);
  for (int k = 0; k < options.instances; ++k) {
    (void)assemble_family(pattern, s.min_c + 6 * k);
  }
  return pattern;
}

std::string write_family(const FamilyPattern& p) {
  std::ostringstream out;
  out << kMagic << '\n'
      << "family " << p.spec.id << '\n'
      << "dims " << p.spec.a << ' ' << p.spec.b << '\n'
      << "residue " << p.spec.residue << " mod 6\n"
      << "min_c " << p.spec.min_c << '\n'
      << "discovery rng_seed=" << p.discovery.rng_seed
      << " trial=" << p.discovery.trial << " moves=" << p.discovery.moves << '\n'
      << "left\n"
      << write_seed_text(p.left) << "block\n"
      << write_seed_text(p.block) << "right\n"
      << write_seed_text(p.right) << "end\n";
  return out.str();
}

namespace {

std::uint64_t parse_u64(std::string_view s, std::size_t line) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line, 1, "expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

std::string_view after(std::string_view text, std::string_view key, std::size_t line) {
  if (!text.starts_with(key)) {
    throw ParseError(line, 1, "expected '" + std::string(key) + "'");
  }
  return text.substr(key.size());
}

}  // namespace

FamilyPattern parse_family(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t i = 0;
  auto next = [&]() -> const TextLine& {
    if (i >= lines.size()) {
      throw ParseError(lines.empty() ? 1 : lines.back().number, 1,
                       "unexpected end of family file");
    }
    return lines[i++];
  };
  const TextLine& magic = next();
  if (magic.text != kMagic) {
    throw ParseError(magic.number, 1, "missing '" + std::string(kMagic) + "' header");
  }
  const TextLine& fam = next();
  FamilyPattern p;
  try {
    p.spec = family_spec(after(fam.text, "family ", fam.number));
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(fam.number, 8, e.what());
  }
  const TextLine& dims = next();
  const std::string expected_dims =
      "dims " + std::to_string(p.spec.a) + " " + std::to_string(p.spec.b);
  if (dims.text != expected_dims) {
    throw ParseError(dims.number, 1, "expected '" + expected_dims + "'");
  }
  const TextLine& residue = next();
  if (residue.text != "residue " + std::to_string(p.spec.residue) + " mod 6") {
    throw ParseError(residue.number, 1, "residue does not match family " + p.spec.id);
  }
  const TextLine& min_c = next();
  if (min_c.text != "min_c " + std::to_string(p.spec.min_c)) {
    throw ParseError(min_c.number, 1, "min_c does not match family " + p.spec.id);
  }
  const TextLine& disc = next();
  {
    std::string_view rest = after(disc.text, "discovery ", disc.number);
    std::istringstream fields{std::string(rest)};
    std::string field;
    int seen = 0;
    while (fields >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw ParseError(disc.number, 1, "malformed discovery field");
      const std::string key = field.substr(0, eq);
      const std::uint64_t v = parse_u64(std::string_view(field).substr(eq + 1), disc.number);
      if (key == "rng_seed") p.discovery.rng_seed = v;
      else if (key == "trial") p.discovery.trial = v;
      else if (key == "moves") p.discovery.moves = v;
      else throw ParseError(disc.number, 1, "unknown discovery field '" + key + "'");
      ++seen;
    }
    if (seen != 3) throw ParseError(disc.number, 1, "expected rng_seed, trial and moves");
  }
  auto section = [&](std::string_view name, std::string_view terminator) {
    const TextLine& head = next();
    if (head.text != name) {
      throw ParseError(head.number, 1, "expected '" + std::string(name) + "'");
    }
    const std::size_t start = i;
    while (i < lines.size() && lines[i].text != terminator) ++i;
    if (i >= lines.size()) {
      throw ParseError(lines.back().number, 1,
                       "missing '" + std::string(terminator) + "'");
    }
    return parse_seed_lines(std::span<const TextLine>(lines).subspan(start, i - start));
  };
  p.left = section("left", "block");
  p.block = section("block", "right");
  p.right = section("right", "end");
  validate_pattern(p);
  return p;
}

std::map<std::string, FamilyPattern> load_family_library(
    const std::filesystem::path& dir) {
  std::map<std::string, FamilyPattern> out;
  if (!std::filesystem::is_directory(dir)) return out;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".family") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    FamilyPattern p = parse_family(buf.str());
    out.emplace(p.spec.id, std::move(p));
  }
  return out;
}

}  // namespace perc
