#include "diagcx/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "diagcx/bipartite.hpp"
#include "diagcx/cactus.hpp"
#include "diagcx/decomposition.hpp"
#include "diagcx/errors.hpp"
#include "diagcx/forests.hpp"
#include "diagcx/homcalc.hpp"
#include "diagcx/present.hpp"
#include "diagcx/series.hpp"

namespace dcx::cli {

namespace {

using nlohmann::json;

struct Config {
  int n = 0;
  std::vector<int> colors;
  std::vector<std::string> factors;
  int degree = 8;
  int p = 2;
  std::string format = "text";
  std::string output;
  std::string input;
  unsigned workers = 1;
  bool unsafe_large = false;
  bool count_only = false;
  bool include_empty = false;
  std::string relations = "fr";  // fr | full | flat | flat-literal
  std::string group;
  std::string family = "all";
  int dump_degree = -1;
  std::vector<int> sizes;
  std::vector<int> parents;
  std::vector<int> labels;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void guard(bool ok, const std::string& what, const Config& cfg) {
  if (!ok && !cfg.unsafe_large) throw ResourceError(what + " (pass --unsafe-large to override)");
}

void need_n(const Config& cfg) {
  if (cfg.n < 1) throw UsageError("--n is required and must be >= 1");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// "circle", "Z/m", "Z/mZ", "S3", "D8", "Q8", products "AxB", or a JSON table file.
std::optional<int> cyclic_order(const std::string& s) {
  static const std::regex re(R"(Z/(\d+)(Z)?)");
  std::smatch m;
  if (std::regex_match(s, m, re)) return std::stoi(m[1]);
  return std::nullopt;
}

FiniteGroup parse_group(const std::string& s) {
  if (s == "circle") throw UnsupportedError("the circle is not a finite group");
  if (auto m = cyclic_order(s)) {
    if (*m < 1) throw UsageError("bad cyclic order in " + s);
    return cyclic_group(*m);
  }
  if (s == "S3") return symmetric_group_3();
  if (s == "D8" || s == "D4") return dihedral_group_8();
  if (s == "Q8") return quaternion_group();
  if (std::filesystem::exists(s)) return group_from_json(read_json_file(s));
  if (const auto x = s.find('x'); x != std::string::npos)
    return direct_product(parse_group(s.substr(0, x)), parse_group(s.substr(x + 1)));
  throw UsageError("unknown group " + s);
}

GradedModuleSeries factor_series(const std::string& s, int degree) {
  if (s == "circle") return GradedModuleSeries::circle(degree);
  if (auto m = cyclic_order(s)) {
    if (*m < 2) throw UsageError("B(Z/m) needs m >= 2");
    return GradedModuleSeries::cyclic_group(*m, degree);
  }
  throw UnsupportedError("series are available for circle and Z/m factors, got " + s);
}

// One entry broadcast to all, or exactly `count` entries.
std::vector<std::string> expand_factors(const Config& cfg, std::size_t count, const std::string& fallback) {
  if (cfg.factors.empty()) return std::vector<std::string>(count, fallback);
  if (cfg.factors.size() == 1) return std::vector<std::string>(count, cfg.factors.front());
  if (cfg.factors.size() != count)
    throw UsageError("--factors needs 1 or " + std::to_string(count) + " entries");
  return cfg.factors;
}

std::vector<FiniteGroup> groups_for(const Config& cfg, int count) {
  std::vector<FiniteGroup> out;
  for (const auto& f : expand_factors(cfg, static_cast<std::size_t>(count), "Z/2")) out.push_back(parse_group(f));
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string render_partition(const PartialPartition& p) { return to_json(p).dump(); }

LabelledComplex load_complex(const Config& cfg) {
  if (!cfg.input.empty()) {
    const json j = read_json_file(cfg.input);
    DiagonalComplex c = complex_from_json(j);
    auto l = labelling_from_json(j);
    Labelling lab = l ? *l : universal_labelling(c);
    return LabelledComplex(std::move(c), std::move(lab));
  }
  need_n(cfg);
  guard(cfg.n <= 4, "complexes are built for n <= 4", cfg);
  return build_gamma_Fn(cfg.n);
}

// ---------------------------------------------------------------------------

std::string cmd_forests_enumerate(const Config& cfg) {
  need_n(cfg);
  guard(cfg.n <= kMaxForestN, "forest enumeration is limited to n <= 8", cfg);
  const auto forests = enumerate_forests(cfg.n, cfg.include_empty, cfg.workers);
  if (cfg.format == "json") {
    json j = {{"n", cfg.n}, {"count", forests.size()}};
    if (!cfg.count_only) {
      j["forests"] = json::array();
      for (const auto& f : forests) j["forests"].push_back(to_json(f));
    }
    return dump(j);
  }
  std::ostringstream os;
  if (cfg.count_only) {
    os << forests.size() << '\n';
  } else {
    for (const auto& f : forests) os << render_edges(f) << '\n';
  }
  return os.str();
}

std::string cmd_complex_verify(const Config& cfg) {
  DiagonalComplex c;
  if (!cfg.input.empty()) {
    c = complex_from_json(read_json_file(cfg.input));
  } else {
    need_n(cfg);
    c = build_gamma_Fn(cfg.n).complex();
  }
  const auto rep = validate(c);
  const bool proper = rep.ok() && is_proper(c);
  if (cfg.format == "json") {
    auto axiom = [](const AxiomResult& a) { return json{{"pass", a.pass}, {"witness", a.witness}}; };
    return dump({{"simplices", c.size()},
                 {"singletons", axiom(rep.singletons)},
                 {"partitions", axiom(rep.partitions)},
                 {"faces", axiom(rep.faces)},
                 {"valid", rep.ok()},
                 {"proper", proper}});
  }
  std::ostringstream os;
  auto line = [&](const char* name, const AxiomResult& a) {
    os << name << ": " << (a.pass ? "PASS" : "FAIL");
    if (!a.pass) os << " (" << a.witness << ")";
    os << '\n';
  };
  os << "simplices: " << c.size() << '\n';
  line("singletons", rep.singletons);
  line("partitions", rep.partitions);
  line("faces", rep.faces);
  os << "proper: " << (proper ? "yes" : "no") << '\n';
  return os.str();
}

std::string cmd_complex_objects(const Config& cfg) {
  const auto lc = load_complex(cfg);
  const auto poset = category_objects(lc);
  if (cfg.format == "json") {
    json objs = json::array();
    for (const auto& o : poset.objects) objs.push_back(to_json(o));
    return dump({{"count", poset.objects.size()}, {"objects", objs}, {"relations", poset.relations().size()}});
  }
  std::ostringstream os;
  os << "objects: " << poset.objects.size() << '\n';
  for (const auto& o : poset.objects) os << render_partition(o) << '\n';
  return os.str();
}

std::string series_report(const GradedModuleSeries& s, const Config& cfg) {
  if (cfg.format == "json") return dump(to_json(s));
  std::string text = s.to_string();
  if (s.finite()) text += ", chi = " + std::to_string(s.euler_characteristic());
  return text + "\n";
}

std::string cmd_series_fr(const Config& cfg) {
  need_n(cfg);
  guard(cfg.n <= 5, "series fr builds Gamma_F_n, limited to n <= 5", cfg);
  std::vector<GradedModuleSeries> ys;
  for (const auto& f : expand_factors(cfg, static_cast<std::size_t>(cfg.n), "circle"))
    ys.push_back(factor_series(f, cfg.degree));
  return series_report(substitute(hilbert_polynomial(build_gamma_Fn(cfg.n)), ys), cfg);
}

std::string cmd_series_wh_free(const Config& cfg) {
  need_n(cfg);
  return series_report(series_Wh_free(cfg.n), cfg);
}

std::string cmd_series_wh_zp(const Config& cfg) {
  need_n(cfg);
  return series_report(series_Wh_Zp(cfg.n, cfg.p, cfg.degree), cfg);
}

Presentation build_presentation(const Config& cfg) {
  need_n(cfg);
  guard(cfg.n <= 4, "presentations are limited to n <= 4", cfg);
  const auto groups = groups_for(cfg, cfg.n);
  if (cfg.relations == "fr") return fr_presentation(cfg.n, groups);
  if (cfg.relations == "full") return dc_presentation(build_gamma_Fn(cfg.n), groups, cfg.n);
  if (cfg.relations == "flat") return fr_flat_presentation(cfg.n, groups, true);
  if (cfg.relations == "flat-literal") return fr_flat_presentation(cfg.n, groups, false);
  throw UsageError("unknown relation set " + cfg.relations);
}

std::string cmd_present_fr(const Config& cfg) {
  const auto p = build_presentation(cfg);
  if (cfg.format == "json") return dump(to_json(p));
  std::ostringstream os;
  os << "generators: " << p.generators.size() << '\n';
  for (const auto& g : p.generators) os << "  " << g.name << '\n';
  os << "relations: " << p.relations.size() << '\n';
  for (const auto& r : p.relations) os << "  [" << r.kind << "] " << p.render(r) << '\n';
  return os.str();
}

std::string cmd_present_export(const Config& cfg) { return export_gap(build_presentation(cfg)); }

std::string cmd_present_verify(const Config& cfg) {
  const auto p = build_presentation(cfg);
  const FreeProduct fp(groups_for(cfg, cfg.n));
  const auto rep = verify_relations(p, fp, forest_realization(cfg.n, fp), cfg.workers);
  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& r : rep.rows)
      rows.push_back({{"relation", p.render(p.relations[r.index])},
                      {"kind", p.relations[r.index].kind},
                      {"pass", r.pass},
                      {"witness", r.witness}});
    return dump({{"test_words", rep.test_words}, {"failures", rep.failures()}, {"rows", rows}});
  }
  std::ostringstream os;
  for (const auto& r : rep.rows) {
    os << (r.pass ? "PASS" : "FAIL") << "  [" << p.relations[r.index].kind << "] " << p.render(p.relations[r.index]);
    if (!r.pass) os << "  witness " << r.witness;
    os << '\n';
  }
  os << rep.rows.size() << " relations, " << rep.failures() << " failures, " << rep.test_words << " test words\n";
  return os.str();
}

std::vector<int> colors_or_trivial(const Config& cfg) {
  if (cfg.colors.empty()) return {cfg.n};
  return cfg.colors;
}

std::string render_coloring(const std::vector<int>& c) {
  std::string s;
  for (int x : c) s += (s.empty() ? "" : ",") + std::to_string(x + 1);
  return s;
}

std::string cmd_orbits(const Config& cfg) {
  need_n(cfg);
  guard(cfg.n <= 6, "orbit decomposition is limited to n <= 6", cfg);
  const auto orbits = orbit_decomposition(cfg.n, colors_or_trivial(cfg));
  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& o : orbits)
      rows.push_back({{"forest", to_json(o.representative.forest)},
                      {"coloring", o.representative.coloring},
                      {"orbit_size", o.orbit_size},
                      {"stabilizer_order", o.stabilizer_order}});
    return dump({{"n", cfg.n}, {"orbits", rows}});
  }
  std::vector<std::vector<std::string>> table = {{"forest", "colours", "orbit", "stabilizer"}};
  for (const auto& o : orbits)
    table.push_back({render_edges(o.representative.forest), render_coloring(o.representative.coloring),
                     std::to_string(o.orbit_size), std::to_string(o.stabilizer_order)});
  return format_table(table);
}

std::string cmd_decomposition(const Config& cfg) {
  need_n(cfg);
  guard(cfg.n <= 6, "decomposition is limited to n <= 6", cfg);
  const auto colors = colors_or_trivial(cfg);
  std::vector<GradedModuleSeries> base;
  for (const auto& f : expand_factors(cfg, colors.size(), "circle")) base.push_back(factor_series(f, cfg.degree));
  const auto rep = decomposition_report(cfg.n, colors, base);
  return cfg.format == "json" ? dump(to_json(rep)) : to_text(rep);
}

std::string cmd_homology_torus(const Config& cfg) {
  const auto lc = load_complex(cfg);
  if (cfg.dump_degree >= 0) return to_triplets(torus_model_matrix(lc.complex(), cfg.dump_degree));
  std::vector<std::string> factors;
  if (!cfg.factors.empty())
    factors = expand_factors(cfg, static_cast<std::size_t>(lc.labels().label_count()), "circle");
  const auto betti = torus_model_betti(lc, factors, cfg.workers);
  if (cfg.format == "json") return dump({{"betti", betti}});
  std::ostringstream os;
  os << "betti:";
  for (auto b : betti) os << ' ' << b;
  os << '\n';
  return os.str();
}

std::string cmd_homology_nerve(const Config& cfg) {
  if (cfg.group.empty()) throw UsageError("--group is required");
  const auto g = parse_group(cfg.group);
  guard(g.order() <= 16, "coset nerves are limited to groups of order <= 16", cfg);
  std::vector<std::vector<int>> family;
  if (cfg.family == "all") {
    family = subgroups(g);
  } else if (cfg.family == "proper") {
    family = subgroups(g);
    family.pop_back();  // the whole group sorts last
  } else if (cfg.family == "trivial") {
    family = {{0}};
  } else {
    family = read_json_file(cfg.family).get<std::vector<std::vector<int>>>();
  }
  const auto nerve = coset_nerve(g, family);
  const auto h = simplicial_homology(nerve.complex, std::max(0, cfg.degree));
  if (cfg.format == "json")
    return dump({{"vertices", nerve.cosets.size()}, {"faces", nerve.complex.faces().size()}, {"homology", to_json(h)}});
  std::ostringstream os;
  os << "vertices: " << nerve.cosets.size() << ", faces: " << nerve.complex.faces().size() << '\n';
  for (std::size_t k = 0; k < h.size(); ++k) {
    os << "H" << k << " = ";
    std::vector<std::string> parts;
    if (h[k].free) parts.push_back(h[k].free == 1 ? "Z" : "Z^" + std::to_string(h[k].free));
    for (const auto& t : h[k].torsion) parts.push_back("Z/" + t.get_str());
    if (parts.empty()) parts.push_back("0");
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? " + " : "") << parts[i];
    os << '\n';
  }
  return os.str();
}

std::string cmd_cactus_coords(const Config& cfg) {
  if (cfg.sizes.empty()) throw UsageError("--sizes is required");
  if (cfg.parents.empty()) {
    // all diagrams: report the Y-model point count
    guard(cfg.sizes.size() <= 4, "cactus enumeration is limited to 4 vertices", cfg);
    const auto pts = ygamma_points(cfg.sizes);
    const auto all = all_diagrams(cfg.sizes);
    if (cfg.format == "json") return dump({{"diagrams", all.size()}, {"points", pts.size()}});
    return "diagrams: " + std::to_string(all.size()) + ", points: " + std::to_string(pts.size()) + "\n";
  }
  std::vector<int> parent;
  for (int p : cfg.parents) parent.push_back(p - 1);  // 1-based, 0 = root
  std::vector<int> label = cfg.labels.empty() ? std::vector<int>(parent.size(), 0) : cfg.labels;
  const CactusDiagram d(parent, label, cfg.sizes);
  const auto m = coordinates(d);
  if (cfg.format == "json") return dump({{"coordinates", m}});
  return render_coordinates(m);
}

void write_report(const std::string& text, const Config& cfg, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::filesystem::path path(cfg.output);
  if (path.is_relative())
    if (const char* dir = std::getenv("DIAGCX_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / path;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Diagonal complexes, planted forests and their automorphism-group invariants", "diagcx"};
  app.require_subcommand(1);
  std::function<std::string(const Config&)> action;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--output", cfg.output, "Write the report to a file (relative to $DIAGCX_OUTPUT_DIR)");
    sub->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::Range(1u, 256u));
    sub->add_flag("--unsafe-large", cfg.unsafe_large, "Lift the size guards");
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  std::function<std::string(const Config&)> fn) {
    auto* sub = parent->add_subcommand(name, help);
    common(sub);
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };
  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", cfg.n, "Number of vertices / factors"); };
  auto add_factors = [&](CLI::App* sub) {
    sub->add_option("--factors", cfg.factors, "circle, Z/m, S3, D8, Q8, AxB or a JSON table file")->delimiter(',');
  };
  auto add_degree = [&](CLI::App* sub) {
    sub->add_option("--degree", cfg.degree, "Truncation degree")->check(CLI::NonNegativeNumber);
  };

  auto* forests = app.add_subcommand("forests", "Planted forests");
  forests->require_subcommand(1);
  auto* fe = leaf(forests, "enumerate", "List all planted forests on n vertices", cmd_forests_enumerate);
  add_n(fe);
  fe->add_flag("--count-only", cfg.count_only, "Print only the count");
  fe->add_flag("--include-empty", cfg.include_empty, "Include the empty forest");

  auto* complex = app.add_subcommand("complex", "Diagonal complexes");
  complex->require_subcommand(1);
  auto* cv = leaf(complex, "verify", "Check the axioms and properness", cmd_complex_verify);
  add_n(cv);
  cv->add_option("--input", cfg.input, "Complex JSON file");
  auto* co = leaf(complex, "objects", "Objects of the partition category", cmd_complex_objects);
  add_n(co);
  co->add_option("--input", cfg.input, "Complex JSON file");

  auto* series = app.add_subcommand("series", "Hilbert-Poincare series");
  series->require_subcommand(1);
  auto* sf = leaf(series, "fr", "Series of the forest complex with the given factors", cmd_series_fr);
  add_n(sf);
  add_factors(sf);
  add_degree(sf);
  auto* sw = leaf(series, "wh-free", "Homology series of Wh(F_n)", cmd_series_wh_free);
  add_n(sw);
  auto* sz = leaf(series, "wh-zp", "Homology series of Wh of a free product of Z/p", cmd_series_wh_zp);
  add_n(sz);
  add_degree(sz);
  sz->add_option("--p", cfg.p, "Prime");

  auto* present = app.add_subcommand("present", "Presentations by partial conjugations");
  present->require_subcommand(1);
  for (auto [name, help, fn] :
       {std::tuple{"fr", "Print the presentation", cmd_present_fr},
        std::tuple{"export", "GAP input for the presentation", cmd_present_export},
        std::tuple{"verify", "Check every relation on partial conjugations", cmd_present_verify}}) {
    auto* sub = leaf(present, name, help, fn);
    add_n(sub);
    add_factors(sub);
    sub->add_option("--relations", cfg.relations, "fr, full, flat or flat-literal")
        ->check(CLI::IsMember({"fr", "full", "flat", "flat-literal"}));
  }

  auto* orb = leaf(&app, "orbits", "Orbits of coloured forests", cmd_orbits);
  add_n(orb);
  orb->add_option("--colors", cfg.colors, "Colour multiplicities")->delimiter(',');

  auto* dec = leaf(&app, "decomposition", "Orbit decomposition with coefficient modules", cmd_decomposition);
  add_n(dec);
  dec->add_option("--colors", cfg.colors, "Colour multiplicities")->delimiter(',');
  add_factors(dec);
  add_degree(dec);

  auto* hom = app.add_subcommand("homology", "Chain-level homology");
  hom->require_subcommand(1);
  auto* ht = leaf(hom, "torus", "Betti numbers of the torus model", cmd_homology_torus);
  add_n(ht);
  add_factors(ht);
  ht->add_option("--input", cfg.input, "Complex JSON file");
  ht->add_option("--dump-degree", cfg.dump_degree, "Print the generator matrix of one degree as triplets");
  auto* hn = leaf(hom, "nerve", "Homology of a coset complex", cmd_homology_nerve);
  hn->add_option("--group", cfg.group, "Group descriptor");
  hn->add_option("--family", cfg.family, "all, proper, trivial or a JSON file of subgroups");
  cfg.degree = 8;
  hn->add_option("--degree", cfg.degree, "Top homology degree");

  auto* cac = app.add_subcommand("cactus", "Cactus diagrams");
  cac->require_subcommand(1);
  auto* cc = leaf(cac, "coords", "Coordinates of a diagram", cmd_cactus_coords);
  cc->add_option("--sizes", cfg.sizes, "Sizes of the pointed sets")->delimiter(',');
  cc->add_option("--parents", cfg.parents, "1-based parents, 0 for the root")->delimiter(',');
  cc->add_option("--labels", cfg.labels, "Edge labels")->delimiter(',');

  std::vector<const char*> argv{"diagcx"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!action) {
    err << "usage error: no command\n";
    return kExitUsage;
  }
  try {
    write_report(action(cfg), cfg, out);
    return kExitOk;
  } catch (const ResourceError& e) {
    err << "resource guard: " << e.what() << '\n';
    return kExitResource;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace dcx::cli
