#include "perc_tools/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "perc/bounds.hpp"
#include "perc/builder.hpp"
#include "perc/catalog.hpp"
#include "perc/combine.hpp"
#include "perc/engine.hpp"
#include "perc/error.hpp"
#include "perc/families.hpp"
#include "perc/milestones.hpp"
#include "perc/recipes.hpp"
#include "perc/search.hpp"
#include "perc/text_format.hpp"

namespace perc::tools {
namespace {

using Json = nlohmann::ordered_json;

struct Globals {
  int r = kDefaultThreshold;
  std::optional<std::int64_t> max_steps;
  std::uint64_t rng_seed = 1;
  std::optional<std::uint64_t> budget;
  std::string catalog = std::string(PERC_DATA_DIR) + "/catalog.txt";
  std::string families = std::string(PERC_DATA_DIR) + "/families";
  unsigned threads = 1;
  bool machine = false;
};

// Failure that maps to exit code 1 after its message is printed.
struct Failed {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

// Seed files and rendered traces are both accepted.
CellSet load_seeds(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_seed_text(text);
  } catch (const ParseError& e) {
    try {
      return strip_rendered(text);
    } catch (const ParseError&) {
    }
    throw ParseError(e.line(), e.column(),
                     path + ": " + std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
  }
}

Json dims_json(const GridDims& d) { return Json::array({d.a, d.b, d.c}); }

Json bound_json(const LowerBound& b) {
  return Json{{"numerator", b.numerator},
              {"denominator", LowerBound::denominator},
              {"ceil", b.ceil},
              {"integral", b.integral()}};
}

Json audit_json(const AuditReport& a) {
  Json off = Json::array();
  for (const Cell& c : a.offending) off.push_back(Json::array({c.x, c.y, c.z}));
  return Json{{"seeds_independent", a.seeds_independent},
              {"exact_three", a.exact_three},
              {"no_simultaneous_adjacent", a.no_simultaneous_adjacent},
              {"surface_constant", a.surface_constant},
              {"offending", off}};
}

Json entry_json(const CatalogEntry& e) {
  return Json{{"dims", dims_json(e.dims)},
              {"status", std::string(to_string(e.status))},
              {"size", e.seeds.size()},
              {"bound", bound_json(lower_bound(e.dims))},
              {"provenance", e.provenance.to_string()},
              {"verified", e.verified},
              {"seeds", write_layer_block(e.seeds)}};
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

std::string yes_no(bool v) { return v ? "yes" : "no"; }

// Seed text preceded by comment lines.
std::string annotated(const CellSet& seeds, const std::vector<std::string>& notes) {
  std::string text;
  for (const auto& n : notes) text += "# " + n + "\n";
  return text + write_seed_text(seeds);
}

void emit_entry(const Globals& g, std::ostream& out, const CatalogEntry& e,
                const std::string& output, const std::string& command) {
  if (!output.empty()) write_file(output, write_seed_text(e.seeds));
  if (g.machine) {
    Json j{{"command", command}};
    j.update(entry_json(e));
    emit(out, j);
    return;
  }
  const std::vector<std::string> notes{
      "grid " + e.dims.to_string() + ", " + std::string(to_string(e.status)) + ", size " +
          std::to_string(e.seeds.size()) + ", bound " + lower_bound(e.dims).to_string(),
      "provenance " + e.provenance.to_string()};
  if (output.empty()) {
    out << annotated(e.seeds, notes);
  } else {
    for (const auto& n : notes) out << n << '\n';
  }
}

PercolationTrace run_trace(const Globals& g, const CellSet& seeds) {
  return percolate(seeds, g.r, g.max_steps);
}

Catalog open_catalog(const Globals& g) {
  if (!std::filesystem::exists(g.catalog)) return Catalog{};
  return Catalog::load(g.catalog);
}

// --- bound ---------------------------------------------------------------

int cmd_bound(const Globals& g, std::ostream& out, const std::array<int, 3>& s) {
  const GridDims d = GridDims::make(s[0], s[1], s[2]);
  const LowerBound b = lower_bound(d);
  const bool possible = perfect_precondition(d);
  if (g.machine) {
    emit(out, Json{{"command", "bound"},
                   {"dims", dims_json(d)},
                   {"bound", bound_json(b)},
                   {"perfect_possible", possible}});
  } else {
    out << "grid " << d.to_string() << '\n'
        << "bound " << b.to_string() << '\n'
        << "ceiling " << b.ceil << '\n'
        << "exact " << (b.integral() ? "yes" : "no") << '\n'
        << "perfect possible " << yes_no(possible) << '\n';
  }
  return kExitOk;
}

// --- simulate / verify / render -----------------------------------------

int cmd_simulate(const Globals& g, std::ostream& out, const std::string& path, bool show) {
  const CellSet seeds = load_seeds(path);
  const PercolationTrace t = run_trace(g, seeds);
  std::vector<std::size_t> per_step(static_cast<std::size_t>(t.steps_taken) + 1, 0);
  for (std::int32_t time : t.infection_time) {
    if (time != kNever) ++per_step[static_cast<std::size_t>(time)];
  }
  const std::string state = t.truncated ? "truncated" : t.percolated ? "percolated" : "stuck";
  if (g.machine) {
    emit(out, Json{{"command", "simulate"},
                   {"dims", dims_json(t.dims)},
                   {"threshold", t.threshold},
                   {"seeds", seeds.size()},
                   {"steps", t.steps_taken},
                   {"infected", t.infected_count()},
                   {"cells", t.dims.cells()},
                   {"state", state},
                   {"new_per_step", per_step}});
  } else {
    out << "grid " << t.dims.to_string() << ", r = " << t.threshold << '\n'
        << "seeds " << seeds.size() << '\n'
        << "steps " << t.steps_taken << '\n'
        << "infected " << t.infected_count() << " of " << t.dims.cells() << '\n'
        << "state " << state << '\n';
    if (show) out << render_trace(t);
  }
  return t.percolated ? kExitOk : kExitFailed;
}

int cmd_verify(const Globals& g, std::ostream& out, const std::string& path,
               const std::string& expect) {
  const CellSet seeds = load_seeds(path);
  const PercolationTrace t = run_trace(g, seeds);
  if (t.truncated) {
    throw Failed{"simulation truncated after " + std::to_string(t.steps_taken) +
                 " steps; raise --max-steps"};
  }
  std::optional<Classification> cls;
  std::optional<AuditReport> audit;
  if (g.r == kDefaultThreshold) {
    cls = classify(t, seeds);
    audit = perfect_audit(t, seeds);
  }
  const Status status = cls ? cls->status
                            : (t.percolated ? Status::Percolating : Status::NotPercolating);
  if (g.machine) {
    Json j{{"command", "verify"},
           {"dims", dims_json(t.dims)},
           {"threshold", t.threshold},
           {"size", seeds.size()},
           {"steps", t.steps_taken},
           {"percolates", t.percolated},
           {"status", std::string(to_string(status))}};
    if (cls) j["bound"] = bound_json(cls->bound);
    if (audit) j["audit"] = audit_json(*audit);
    emit(out, j);
  } else {
    out << "grid " << t.dims.to_string() << ", r = " << t.threshold << '\n'
        << "size " << seeds.size() << '\n';
    if (cls) out << "bound " << cls->bound.to_string() << '\n';
    out << "steps " << t.steps_taken << '\n' << "status " << to_string(status) << '\n';
    if (audit) {
      out << "audit seeds independent " << yes_no(audit->seeds_independent) << '\n'
          << "audit exactly three neighbours " << yes_no(audit->exact_three) << '\n'
          << "audit no simultaneous neighbours " << yes_no(audit->no_simultaneous_adjacent)
          << '\n'
          << "audit surface constant " << yes_no(audit->surface_constant) << '\n';
    }
  }
  if (!t.percolated) return kExitFailed;
  if (!expect.empty() && status < parse_status(expect)) return kExitFailed;
  return kExitOk;
}

int cmd_render(const Globals& g, std::ostream& out, const std::string& path,
               const std::string& output) {
  const CellSet seeds = load_seeds(path);
  const PercolationTrace t = run_trace(g, seeds);
  const std::string text = render_trace(t);
  if (output.empty()) {
    out << text;
  } else {
    write_file(output, text);
  }
  return t.percolated ? kExitOk : kExitFailed;
}

// --- combine -------------------------------------------------------------

int cmd_combine(const Globals& g, std::ostream& out, const std::vector<std::string>& paths,
                const std::string& output) {
  std::array<CatalogEntry, 4> parts;
  for (std::size_t i = 0; i < 4; ++i) {
    CatalogEntry& e = parts[i];
    e.seeds = load_seeds(paths[i]);
    e.dims = e.seeds.dims();
    e.status = classify(e.seeds).status;
    e.verified = true;
  }
  const CatalogEntry c = combine(parts[0], parts[1], parts[2], parts[3]);
  emit_entry(g, out, c, output, "combine");
  return kExitOk;
}

// --- build ---------------------------------------------------------------

struct BuildArgs {
  std::string kind;
  std::vector<int> values;
  std::string status = "optimal";
  std::string output;
  bool allow_search = false;
  bool save = false;
  bool explain = false;
  std::size_t cell_limit = 1u << 16;
};

int cmd_build(const Globals& g, std::ostream& out, const BuildArgs& a) {
  auto need_values = [&](std::size_t n) {
    if (a.values.size() != n) {
      throw InputError("build " + a.kind + " takes " + std::to_string(n) + " integers");
    }
  };
  if (a.kind == "thickness1") {
    need_values(1);
    emit_entry(g, out, gen_thickness1(a.values[0]), a.output, "build");
    return kExitOk;
  }
  Catalog catalog = open_catalog(g);
  const auto families = load_family_library(g.families);
  BuildOptions options;
  options.allow_search = a.allow_search;
  options.cell_limit = a.cell_limit;
  options.search.rng_seed = g.rng_seed;
  options.search.threads = g.threads;
  if (g.budget) options.search.budget = *g.budget;
  Builder builder(catalog, families, options);

  CatalogEntry e;
  if (a.kind == "perfect4") {
    need_values(2);
    if (a.explain) {
      out << perfect4_recipe(a.values[0], a.values[1]).rule << '\n'
          << builder.explain(GridDims::make(4, a.values[0], a.values[1]), Status::Perfect);
      return kExitOk;
    }
    e = builder.build_perfect_4(a.values[0], a.values[1]);
  } else if (a.kind == "optimal") {
    need_values(3);
    if (a.explain) {
      out << optimal_recipe(a.values[0], a.values[1], a.values[2]).rule << '\n'
          << builder.explain(GridDims::make(a.values[0], a.values[1], a.values[2]),
                             Status::Optimal);
      return kExitOk;
    }
    e = builder.build_optimal(a.values[0], a.values[1], a.values[2]);
  } else if (a.kind == "grid") {
    need_values(3);
    const GridDims d = GridDims::make(a.values[0], a.values[1], a.values[2]);
    const Status need = parse_status(a.status);
    if (a.explain) {
      out << builder.explain(d, need);
      return kExitOk;
    }
    e = builder.obtain(d, need);
  } else {
    throw InputError("unknown build kind '" + a.kind + "'");
  }
  if (a.save) catalog.save(g.catalog);
  emit_entry(g, out, e, a.output, "build");
  return kExitOk;
}

// --- search --------------------------------------------------------------

struct SearchArgs {
  std::string mode;
  std::array<int, 3> dims{};
  std::optional<std::int64_t> target;
  bool from_zero = false;
  bool append = false;
  std::string output;
};

int cmd_search(const Globals& g, std::ostream& out, const SearchArgs& a) {
  const GridDims d = GridDims::make(a.dims[0], a.dims[1], a.dims[2]);
  SearchResult res;
  if (a.mode == "exhaustive") {
    ExhaustiveOptions o;
    o.threshold = g.r;
    o.start_at_bound = !a.from_zero;
    o.threads = g.threads;
    if (g.budget) o.node_budget = *g.budget;
    res = min_exhaustive(d, o);
  } else if (a.mode == "anneal") {
    AtBoundOptions o;
    o.rng_seed = g.rng_seed;
    o.threads = g.threads;
    if (g.budget) o.budget = *g.budget;
    res = find_at_bound(d, a.target.value_or(lower_bound(d).ceil), o);
  } else {
    throw InputError("unknown search mode '" + a.mode + "'");
  }

  std::optional<CatalogEntry> entry;
  if (res.witness && g.r == kDefaultThreshold) {
    CatalogEntry e;
    e.dims = d;
    e.seeds = *res.witness;
    e.status = classify(e.seeds).status;
    e.provenance = res.mode == SearchMode::ExhaustiveProven
                       ? Provenance::exhaustive()
                       : Provenance::heuristic(res.rng_seed.value_or(g.rng_seed));
    e.verified = true;
    if (e.status >= Status::Optimal) entry = e;
  }
  if (a.append) {
    if (!entry) throw Failed{"no optimal witness to append"};
    Catalog catalog = open_catalog(g);
    if (!catalog.find(d, entry->status)) {
      entry->id = catalog.insert(*entry);
      catalog.save(g.catalog);
    }
  }
  if (!a.output.empty() && res.witness) write_file(a.output, write_seed_text(*res.witness));

  if (g.machine) {
    Json j{{"command", "search"},
           {"dims", dims_json(d)},
           {"mode", std::string(to_string(res.mode))},
           {"nodes", res.nodes_explored}};
    if (res.min_size) j["min_size"] = *res.min_size;
    if (res.rng_seed) j["rng_seed"] = *res.rng_seed;
    if (res.witness) j["witness"] = write_layer_block(*res.witness);
    if (!res.note.empty()) j["note"] = res.note;
    emit(out, j);
  } else {
    out << "grid " << d.to_string() << '\n' << "mode " << to_string(res.mode) << '\n';
    if (res.min_size) out << "minimum " << *res.min_size << '\n';
    out << "nodes " << res.nodes_explored << '\n';
    if (!res.note.empty()) out << "note " << res.note << '\n';
    if (entry) {
      out << write_entry(*entry);
    } else if (res.witness) {
      out << write_seed_text(*res.witness);
    }
  }
  return res.mode == SearchMode::Failed ? kExitFailed : kExitOk;
}

// --- family --------------------------------------------------------------

struct FamilyArgs {
  std::string action;
  std::string id;
  std::vector<int> cs;
  std::string pattern;
  std::string output;
};

FamilyPattern pattern_for(const Globals& g, const FamilyArgs& a) {
  if (!a.pattern.empty()) return parse_family(read_file(a.pattern));
  const auto lib = load_family_library(g.families);
  const auto it = lib.find(a.id);
  if (it == lib.end()) {
    throw Failed{"family " + a.id + " has no pattern in " + g.families};
  }
  return it->second;
}

int cmd_family(const Globals& g, std::ostream& out, std::ostream& err, const FamilyArgs& a) {
  if (a.action == "list") {
    const auto lib = load_family_library(g.families);
    Json j = Json::array();
    for (const FamilySpec& s : known_families()) {
      const bool loaded = lib.contains(s.id);
      if (g.machine) {
        j.push_back(Json{{"id", s.id}, {"a", s.a}, {"b", s.b}, {"residue", s.residue},
                         {"min_c", s.min_c}, {"loaded", loaded}});
      } else {
        out << s.id << "  (" << s.a << "," << s.b << ",c)  c ≡ " << s.residue
            << " (mod 6), c >= " << s.min_c << "  " << (loaded ? "loaded" : "missing") << '\n';
      }
    }
    if (g.machine) emit(out, j);
    return kExitOk;
  }
  if (a.action == "discover") {
    const FamilySpec& spec = family_spec(a.id);
    DiscoveryOptions o;
    o.rng_seed = g.rng_seed;
    o.threads = g.threads;
    if (g.budget) o.budget = *g.budget;
    try {
      const FamilyPattern p = discover_family(spec, o);
      const std::string text = write_family(p);
      if (a.output.empty()) {
        out << text;
      } else {
        write_file(a.output, text);
        out << "family " << spec.id << " found in trial " << p.discovery.trial << " after "
            << p.discovery.moves << " moves\n";
      }
      return kExitOk;
    } catch (const DiscoveryFailed& e) {
      err << "perc: " << e.what() << '\n' << "best candidate:\n" << write_family(e.best());
      return kExitFailed;
    }
  }
  if (a.action == "assemble") {
    if (a.cs.size() != 1) throw InputError("family assemble takes one value of c");
    const FamilyPattern p = pattern_for(g, a);
    emit_entry(g, out, assemble_family(p, a.cs[0]), a.output, "family");
    return kExitOk;
  }
  if (a.action == "milestones") {
    if (a.cs.size() < 2) throw InputError("family milestones needs at least two values of c");
    const FamilyPattern p = pattern_for(g, a);
    const auto ms = family_milestones(p, a.cs, standard_regions);
    Json j = Json::array();
    for (const FamilyMilestone& m : ms) {
      Json times = Json::array();
      std::string shown;
      for (const auto& t : m.times) {
        if (t) times.push_back(*t); else times.push_back(nullptr);
        shown += (shown.empty() ? "" : " ") + (t ? std::to_string(*t) : std::string("never"));
      }
      const std::string fit = m.time ? m.time->to_string() : "not affine";
      if (g.machine) {
        j.push_back(Json{{"region", m.region}, {"times", times}, {"fit", fit}});
      } else {
        out << m.region << ": " << shown << "  ->  t = " << fit << '\n';
      }
    }
    if (g.machine) emit(out, j);
    return kExitOk;
  }
  throw InputError("unknown family action '" + a.action + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"3-neighbour bootstrap percolation on a x b x c grids", "perc"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--r", g.r, "infection threshold")->check(CLI::Range(1, 6));
  app.add_option("--max-steps", g.max_steps, "step limit for simulations");
  app.add_option("--rng-seed", g.rng_seed, "seed for stochastic searches");
  app.add_option("--budget", g.budget, "search budget (nodes or annealing moves)");
  app.add_option("--catalog", g.catalog, "witness catalog file");
  app.add_option("--families", g.families, "directory of family pattern files");
  app.add_option("--threads", g.threads, "worker threads for searches");
  app.add_flag("--machine", g.machine, "JSON output");

  std::function<int()> action;

  std::array<int, 3> bound_dims{};
  auto* bound = app.add_subcommand("bound", "lower bound and perfect precondition");
  bound->add_option("a", bound_dims[0])->required();
  bound->add_option("b", bound_dims[1])->required();
  bound->add_option("c", bound_dims[2])->required();
  bound->callback([&] { action = [&] { return cmd_bound(g, out, bound_dims); }; });

  std::string seed_path;
  bool show_trace = false;
  auto* simulate = app.add_subcommand("simulate", "run the process on a seed file");
  simulate->add_option("file", seed_path)->required();
  simulate->add_flag("--trace", show_trace, "also print the rendered trace");
  simulate->callback([&] { action = [&] { return cmd_simulate(g, out, seed_path, show_trace); }; });

  std::string expect;
  auto* verify = app.add_subcommand("verify", "classify a seed file");
  verify->add_option("file", seed_path)->required();
  verify->add_option("--expect", expect, "fail unless the status is at least this");
  verify->callback([&] { action = [&] { return cmd_verify(g, out, seed_path, expect); }; });

  std::string output;
  auto* render = app.add_subcommand("render", "print infection times per cell");
  render->add_option("file", seed_path)->required();
  render->add_option("-o,--output", output);
  render->callback([&] { action = [&] { return cmd_render(g, out, seed_path, output); }; });

  std::vector<std::string> part_paths;
  auto* comb = app.add_subcommand("combine", "octant composition of four seed files");
  comb->add_option("parts", part_paths, "p1 p2 p3 p4")->required()->expected(4);
  comb->add_option("-o,--output", output);
  comb->callback([&] { action = [&] { return cmd_combine(g, out, part_paths, output); }; });

  BuildArgs build_args;
  auto* build = app.add_subcommand("build", "construct a witness");
  build->add_option("kind", build_args.kind, "perfect4 | optimal | thickness1 | grid")
      ->required()
      ->check(CLI::IsMember({"perfect4", "optimal", "thickness1", "grid"}));
  build->add_option("values", build_args.values, "side lengths (or k)")->required();
  build->add_option("--status", build_args.status, "grid: optimal or perfect")
      ->check(CLI::IsMember({"optimal", "perfect"}));
  build->add_option("-o,--output", build_args.output);
  build->add_option("--cell-limit", build_args.cell_limit);
  build->add_flag("--allow-search", build_args.allow_search, "search for missing leaves");
  build->add_flag("--save", build_args.save, "write new witnesses back to the catalog");
  build->add_flag("--explain", build_args.explain, "print the plan only");
  build->callback([&] { action = [&] { return cmd_build(g, out, build_args); }; });

  SearchArgs search_args;
  auto* search = app.add_subcommand("search", "minimum or at-bound percolating sets");
  search->add_option("mode", search_args.mode, "exhaustive | anneal")
      ->required()
      ->check(CLI::IsMember({"exhaustive", "anneal"}));
  search->add_option("a", search_args.dims[0])->required();
  search->add_option("b", search_args.dims[1])->required();
  search->add_option("c", search_args.dims[2])->required();
  search->add_option("--target", search_args.target, "anneal: seed count");
  search->add_flag("--from-zero", search_args.from_zero,
                   "exhaustive: start below the surface bound");
  search->add_flag("--append", search_args.append, "insert the witness into the catalog");
  search->add_option("-o,--output", search_args.output);
  search->callback([&] { action = [&] { return cmd_search(g, out, search_args); }; });

  FamilyArgs family_args;
  auto* family = app.add_subcommand("family", "periodic families");
  family->add_option("action", family_args.action, "list | discover | assemble | milestones")
      ->required()
      ->check(CLI::IsMember({"list", "discover", "assemble", "milestones"}));
  family->add_option("id", family_args.id);
  family->add_option("c", family_args.cs);
  family->add_option("--pattern", family_args.pattern, "pattern file instead of the library");
  family->add_option("-o,--output", family_args.output);
  family->callback([&] { action = [&] { return cmd_family(g, out, err, family_args); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "perc: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    return action();
  } catch (const Failed& f) {
    err << "perc: " << f.message << '\n';
    return kExitFailed;
  } catch (const DependencyError& e) {
    err << "perc: " << e.what() << '\n' << "missing: " << e.missing() << '\n';
    return kExitFailed;
  } catch (const CapacityError& e) {
    err << "perc: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "perc: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "perc: " << e.what() << '\n';
    return kExitFailed;
  }
}

}  // namespace perc::tools
