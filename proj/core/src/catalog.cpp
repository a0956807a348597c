#include "perc/catalog.hpp"

#include <charconv>
#include <fstream>
#include <mutex>
#include <sstream>

#include "perc/error.hpp"
#include "perc/symmetry.hpp"
#include "perc/text_format.hpp"

namespace perc {
namespace {

constexpr std::string_view kMagic = "perc-catalog 1";

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::optional<std::int64_t> to_int(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::int64_t require_int(std::string_view s, std::size_t line) {
  const auto v = to_int(s);
  if (!v) throw ParseError(line, 1, "expected an integer, got '" + std::string(s) + "'");
  return *v;
}

// "key=value" -> value
std::string_view value_of(std::string_view token, std::string_view key) {
  if (!token.starts_with(key) || token.size() <= key.size() ||
      token[key.size()] != '=') {
    throw InputError("expected '" + std::string(key) + "=...', got '" +
                     std::string(token) + "'");
  }
  return token.substr(key.size() + 1);
}

}  // namespace

Provenance Provenance::exhaustive() {
  Provenance p;
  p.kind = Kind::SearchedExhaustive;
  return p;
}

Provenance Provenance::heuristic(std::uint64_t rng_seed) {
  Provenance p;
  p.kind = Kind::SearchedHeuristic;
  p.rng_seed = rng_seed;
  return p;
}

Provenance Provenance::combined(std::array<int, 4> children) {
  Provenance p;
  p.kind = Kind::Combined;
  p.children = children;
  return p;
}

Provenance Provenance::from_family(std::string id, int c) {
  Provenance p;
  p.kind = Kind::Family;
  p.family = std::move(id);
  p.family_c = c;
  return p;
}

Provenance Provenance::thickness1(int k) {
  Provenance p;
  p.kind = Kind::Thickness1;
  p.k = k;
  return p;
}

std::string Provenance::to_string() const {
  switch (kind) {
    case Kind::SearchedExhaustive:
      return "searched-exhaustive";
    case Kind::SearchedHeuristic:
      return "searched-heuristic rng_seed=" + std::to_string(rng_seed);
    case Kind::Combined:
      return "combined " + std::to_string(children[0]) + " " +
             std::to_string(children[1]) + " " + std::to_string(children[2]) +
             " " + std::to_string(children[3]);
    case Kind::Family:
      return "family " + family + " c=" + std::to_string(family_c);
    case Kind::Thickness1:
      return "thickness1 k=" + std::to_string(k);
  }
  return "?";
}

Provenance Provenance::parse(std::string_view text) {
  const auto w = words(text);
  if (w.empty()) throw InputError("empty provenance");
  auto bad = [&] { return InputError("malformed provenance '" + std::string(text) + "'"); };
  if (w[0] == "searched-exhaustive" && w.size() == 1) return exhaustive();
  if (w[0] == "searched-heuristic" && w.size() == 2) {
    const auto v = to_int(value_of(w[1], "rng_seed"));
    if (!v || *v < 0) throw bad();
    return heuristic(static_cast<std::uint64_t>(*v));
  }
  if (w[0] == "combined" && w.size() == 5) {
    std::array<int, 4> ids{};
    for (int i = 0; i < 4; ++i) {
      const auto v = to_int(w[static_cast<std::size_t>(i) + 1]);
      if (!v) throw bad();
      ids[static_cast<std::size_t>(i)] = static_cast<int>(*v);
    }
    return combined(ids);
  }
  if (w[0] == "family" && w.size() == 3) {
    const auto v = to_int(value_of(w[2], "c"));
    if (!v) throw bad();
    return from_family(std::string(w[1]), static_cast<int>(*v));
  }
  if (w[0] == "thickness1" && w.size() == 2) {
    const auto v = to_int(value_of(w[1], "k"));
    if (!v) throw bad();
    return thickness1(static_cast<int>(*v));
  }
  throw bad();
}

bool reverify(const CatalogEntry& entry) {
  if (entry.seeds.dims() != entry.dims) return false;
  const Classification cls = classify(entry.seeds);
  return cls.status >= entry.status;
}

CatalogEntry oriented(const CatalogEntry& entry, const GridDims& target) {
  if (entry.dims == target) return entry;
  const auto o = permutation_to(entry.dims, target);
  if (!o) {
    throw InputError("entry on " + entry.dims.to_string() +
                     " cannot be oriented onto " + target.to_string());
  }
  CatalogEntry out = entry;
  out.dims = target;
  out.seeds = apply(*o, entry.seeds);
  return out;
}

Catalog::Catalog() : mutex_(std::make_unique<std::shared_mutex>()) {}
Catalog::Catalog(Catalog&&) noexcept = default;
Catalog& Catalog::operator=(Catalog&&) noexcept = default;
Catalog::~Catalog() = default;

std::string write_entry(const CatalogEntry& e) {
  std::ostringstream out;
  out << "entry " << e.id << '\n'
      << "dims " << e.dims.a << ' ' << e.dims.b << ' ' << e.dims.c << '\n'
      << "status " << to_string(e.status) << '\n'
      << "provenance " << e.provenance.to_string() << '\n'
      << "verified " << (e.verified ? "yes" : "no") << '\n'
      << "size " << e.seeds.size() << '\n'
      << "seeds\n"
      << write_layer_block(e.seeds) << "end\n";
  return out.str();
}

std::string Catalog::serialize() const {
  std::shared_lock lock(*mutex_);
  std::string out(kMagic);
  out += '\n';
  for (const CatalogEntry& e : entries_) {
    out += '\n';
    out += write_entry(e);
  }
  return out;
}

void Catalog::save(const std::filesystem::path& path) const {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path.string());
  file << serialize();
}

Catalog Catalog::load(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot read catalog " + path.string());
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse(buf.str());
}

Catalog Catalog::parse(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t i = 0;
  auto skip_blank = [&] {
    while (i < lines.size() &&
           (lines[i].text.empty() || lines[i].text.front() == '#')) {
      ++i;
    }
  };
  skip_blank();
  if (i >= lines.size() || lines[i].text != kMagic) {
    throw ParseError(i < lines.size() ? lines[i].number : 1, 1,
                     "missing '" + std::string(kMagic) + "' header");
  }
  ++i;
  Catalog catalog;
  auto expect = [&](std::string_view key) -> std::pair<std::string_view, std::size_t> {
    if (i >= lines.size()) {
      throw ParseError(lines.empty() ? 1 : lines.back().number, 1,
                       "unexpected end of catalog, expected '" + std::string(key) + "'");
    }
    const TextLine& line = lines[i++];
    if (!line.text.starts_with(key) ||
        (line.text.size() > key.size() && line.text[key.size()] != ' ')) {
      throw ParseError(line.number, 1, "expected '" + std::string(key) + "'");
    }
    const std::string_view rest =
        line.text.size() > key.size() ? line.text.substr(key.size() + 1) : "";
    return {rest, line.number};
  };
  while (true) {
    skip_blank();
    if (i >= lines.size()) break;
    CatalogEntry e;
    const auto [id_text, id_line] = expect("entry");
    e.id = static_cast<int>(require_int(id_text, id_line));
    if (e.id != static_cast<int>(catalog.entries_.size()) + 1) {
      throw ParseError(id_line, 7, "entry ids must be dense and start at 1");
    }
    const auto [dims_text, dims_line] = expect("dims");
    const auto d = words(dims_text);
    if (d.size() != 3) throw ParseError(dims_line, 6, "expected three sides");
    try {
      e.dims = GridDims::make(require_int(d[0], dims_line),
                              require_int(d[1], dims_line),
                              require_int(d[2], dims_line));
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& err) {
      throw ParseError(dims_line, 6, err.what());
    }
    const auto [status_text, status_line] = expect("status");
    try {
      e.status = parse_status(status_text);
      if (e.status < Status::Optimal) {
        throw InputError("catalog entries must be optimal or perfect");
      }
    } catch (const InputError& err) {
      throw ParseError(status_line, 8, err.what());
    }
    const auto [prov_text, prov_line] = expect("provenance");
    try {
      e.provenance = Provenance::parse(prov_text);
    } catch (const InputError& err) {
      throw ParseError(prov_line, 12, err.what());
    }
    const auto [ver_text, ver_line] = expect("verified");
    if (ver_text != "yes" && ver_text != "no") {
      throw ParseError(ver_line, 10, "expected yes or no");
    }
    e.verified = ver_text == "yes";
    const auto [size_text, size_line] = expect("size");
    const std::int64_t size = require_int(size_text, size_line);
    expect("seeds");
    const std::size_t block_start = i;
    while (i < lines.size() && lines[i].text != "end") ++i;
    if (i >= lines.size()) {
      throw ParseError(lines.back().number, 1, "entry " + std::to_string(e.id) +
                                                   " is missing 'end'");
    }
    e.seeds = parse_layer_block(
        std::span<const TextLine>(lines).subspan(block_start, i - block_start),
        e.dims);
    ++i;
    if (static_cast<std::int64_t>(e.seeds.size()) != size) {
      throw ParseError(size_line, 6,
                       "size " + std::to_string(size) + " disagrees with " +
                           std::to_string(e.seeds.size()) + " seeds");
    }
    if (e.verified && !reverify(e)) {
      throw ConstructionError("catalog entry " + std::to_string(e.id) + " on " +
                              e.dims.to_string() + " fails re-verification as " +
                              std::string(to_string(e.status)));
    }
    catalog.entries_.push_back(std::move(e));
  }
  return catalog;
}

int Catalog::insert(CatalogEntry entry) {
  std::unique_lock lock(*mutex_);
  entry.id = static_cast<int>(entries_.size()) + 1;
  entries_.push_back(std::move(entry));
  return entries_.back().id;
}

std::optional<CatalogEntry> Catalog::find(const GridDims& dims,
                                          Status at_least) const {
  std::shared_lock lock(*mutex_);
  const GridDims key = dims.sorted();
  for (const CatalogEntry& e : entries_) {
    if (e.dims.sorted() == key && e.status >= at_least) return oriented(e, dims);
  }
  return std::nullopt;
}

std::optional<CatalogEntry> Catalog::by_id(int id) const {
  std::shared_lock lock(*mutex_);
  if (id < 1 || id > static_cast<int>(entries_.size())) return std::nullopt;
  return entries_[static_cast<std::size_t>(id - 1)];
}

std::vector<CatalogEntry> Catalog::entries() const {
  std::shared_lock lock(*mutex_);
  return entries_;
}

std::size_t Catalog::size() const {
  std::shared_lock lock(*mutex_);
  return entries_.size();
}

}  // namespace perc
