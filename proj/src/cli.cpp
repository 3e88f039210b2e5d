#include "transferkit/cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "transferkit/digest.hpp"
#include "transferkit/error.hpp"
#include "transferkit/family.hpp"
#include "transferkit/hasse.hpp"
#include "transferkit/indexing.hpp"
#include "transferkit/permcat.hpp"
#include "transferkit/segal.hpp"
#include "transferkit/serialize.hpp"
#include "transferkit/transfer.hpp"
#include "transferkit/universe.hpp"

namespace transferkit {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Options {
  std::string action;
  std::string group;
  std::string pairs;
  std::string input;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 20240521;
  int jobs = 1;
  // Command-specific.
  std::string members = "[]";
  std::string irreps = "[\"trivial\"]";
  std::string gset;
  std::string carrier = "all";
  std::string permcat = "skeletal";
  int subgroup = -1;
  int k = -1;
  int bound = -1;
  int n = 2;
  int size = 3;
};

// Outcome of a command: JSON result (or text for DOT), artifacts, exit code.
struct Outcome {
  int code = 0;
  json result;
  std::vector<std::pair<std::string, std::string>> artifacts;  // file name, contents
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LatticePtr need_lattice(const Options& o) {
  if (o.group.empty()) throw InputError("--group is required");
  return SubgroupLattice::make(group_from_spec(o.group), kMaxGroupOrder);
}

std::vector<Pair> need_pairs(const Options& o, const SubgroupLattice& lat) {
  std::string text;
  if (!o.pairs.empty())
    text = o.pairs;
  else if (!o.input.empty())
    text = read_file(o.input);
  else
    throw InputError("--pairs or --input is required");
  json j = parse_json(text, "pairs");
  if (j.is_object() && j.contains("pairs")) j = j["pairs"];
  return pairs_from_json(lat, j);
}

json violations_json(const SubgroupLattice& lat, const std::vector<Violation>& vs) {
  json a = json::array();
  for (const Violation& v : vs)
    a.push_back({{"axiom", v.axiom},
                 {"cause", {v.cause.first, v.cause.second}},
                 {"missing", {v.missing.first, v.missing.second}},
                 {"message", v.message},
                 {"missing_text", lat.label(v.missing.first) + "->" + lat.label(v.missing.second)}});
  return a;
}

Outcome cmd_transfer(const Options& o) {
  LatticePtr lat = need_lattice(o);
  Outcome r;
  const std::string& a = o.action;
  if (a == "lattice") {
    r.result = lattice_to_json(*lat);
    r.artifacts.emplace_back("lattice.json", r.result.dump(2) + "\n");
    return r;
  }
  if (a == "enumerate" || a == "hasse") {
    EnumerateOptions eo;
    eo.jobs = o.jobs;
    eo.cache_dir = cache_dir_from_env();
    std::vector<TransferSystem> all = enumerate_all(lat, eo);
    json systems = json::array();
    std::size_t disk = 0;
    for (const TransferSystem& t : all) {
      bool d = is_disklike(t);
      disk += d;
      systems.push_back({{"pairs", pairs_to_json(t.pairs())}, {"disklike", d}});
    }
    std::vector<std::pair<int, int>> edges = covering_edges(all);
    r.result = {{"group", lat->group().name()},
                {"count", all.size()},
                {"disklike_count", disk},
                {"covering_edges", edges.size()},
                {"systems", systems}};
    if (a == "enumerate") r.artifacts.emplace_back("transfers.json", r.result.dump(2) + "\n");
    if (a == "hasse" || o.format == "dot") {
      std::string dot = hasse_dot(all, edges, lat->group().name());
      r.artifacts.emplace_back("transfers.dot", dot);
      r.result = {{"group", lat->group().name()}, {"count", all.size()}, {"dot", dot}};
    }
    return r;
  }
  std::vector<Pair> pairs = need_pairs(o, *lat);
  if (a == "check") {
    std::vector<Violation> vs = validate(*lat, pairs);
    r.result = {{"valid", vs.empty()}, {"violations", violations_json(*lat, vs)}};
    r.code = vs.empty() ? 0 : 1;
  } else if (a == "complete") {
    RubinStages st = rubin_stages(*lat, pairs);
    TransferSystem t = rubin_complete(lat, pairs);
    r.result = {{"closure", transfer_to_json(t)},
                {"stage_sizes", {st.r0.count(), st.r1.count(), st.r2.count(), st.r3.count()}}};
  } else if (a == "disklike") {
    TransferSystem t = TransferSystem::from_pairs(lat, pairs);
    bool by_b = disklike_by_intersection(t), by_a = disklike_by_generation(t);
    TransferSystem core = disklike_core(t);
    std::vector<Pair> unwitnessed;
    for (const Pair& p : t.pairs())
      if (!core.relates(p.first, p.second)) unwitnessed.push_back(p);
    r.result = {{"disklike", by_b},
                {"by_generation", by_a},
                {"by_intersection", by_b},
                {"top_level_sources", t.top_level_sources()},
                {"unwitnessed", pairs_to_json(unwitnessed)},
                {"unwitnessed_text", pairs_to_string(*lat, unwitnessed)}};
    r.code = by_b ? 0 : 1;
  } else {
    throw InputError("unknown transfer action '" + a + "'");
  }
  r.artifacts.emplace_back("transfer-" + a + ".json", r.result.dump(2) + "\n");
  return r;
}

Outcome cmd_family(const Options& o) {
  LatticePtr lat = need_lattice(o);
  Outcome r;
  const std::string& a = o.action;
  if (a == "generate" || a == "check") {
    std::vector<SubgroupId> ms = subgroups_from_json(*lat, parse_json(o.members, "--members"));
    Family f = generated_family(lat, ms), t = transfer_like_family(lat, ms);
    TransferLikeResult tl = is_transfer_like(f);
    json excess = json::array();
    for (SubgroupId k : tl.excess) excess.push_back(lat->label(k));
    r.result = {{"generated_family", family_to_json(f)},
                {"transfer_closure", family_to_json(t)},
                {"transfer_like", tl.transfer_like},
                {"excess", tl.excess},
                {"excess_labels", excess}};
    if (a == "check") r.code = tl.transfer_like ? 0 : 1;
  } else if (a == "phi") {
    TransferSystem t = TransferSystem::from_pairs(lat, need_pairs(o, *lat));
    PhiResult p = phi(t, Strictness::Permissive);
    r.result = {{"family", family_to_json(p.family)}, {"disklike", p.disklike}};
    r.code = p.disklike ? 0 : 1;
  } else if (a == "census") {
    json rows = json::array();
    std::set<Bitset, bool (*)(const Bitset&, const Bitset&)> images(bitset_less);
    std::size_t disk = 0;
    for (const TransferSystem& t : enumerate_all(lat, {o.jobs, cache_dir_from_env()})) {
      if (!is_disklike(t)) continue;
      ++disk;
      Family f = phi(t).family;
      images.insert(f.bits());
      rows.push_back({{"pairs", pairs_to_json(t.pairs())}, {"phi", family_to_json(f)}});
    }
    std::size_t based = all_based_families(lat).size();
    r.result = {{"disklike_count", disk},
                {"distinct_images", images.size()},
                {"based_families", based},
                {"injective", images.size() == disk},
                {"systems", rows}};
  } else {
    throw InputError("unknown family action '" + a + "'");
  }
  r.artifacts.emplace_back("family-" + a + ".json", r.result.dump(2) + "\n");
  return r;
}

Outcome cmd_universe(const Options& o) {
  LatticePtr lat = need_lattice(o);
  Outcome r;
  if (o.action == "system") {
    json j = parse_json(o.irreps, "--irreps");
    if (!j.is_array()) throw InputError("--irreps must be a JSON array of labels");
    std::vector<Irreducible> irr;
    for (const auto& v : j) irr.push_back(Irreducible::parse(v.get<std::string>()));
    Universe u(lat, irr);
    TransferSystem t = universe_transfer_system(u);
    r.result = {{"universe", u.to_string()}, {"system", transfer_to_json(t)}, {"disklike", is_disklike(t)}};
  } else if (o.action == "lattice") {
    UniverseLatticeReport rep = universe_lattice(lat, o.bound > 0 ? o.bound : 12);
    json basis = json::array(), nodes = json::array();
    for (const auto& b : rep.basis) basis.push_back(b.label());
    for (const auto& nd : rep.nodes) nodes.push_back({{"subset", nd.subset}, {"system", transfer_to_json(nd.system)}});
    auto wit = [](const auto& w) { return w ? json{w->first, w->second} : json(); };
    r.result = {{"basis", basis},
                {"nodes", nodes},
                {"all_valid", rep.all_valid},
                {"all_disklike", rep.all_disklike},
                {"order_preserving", rep.order_preserving},
                {"join_preserving", rep.join_preserving},
                {"meet_preserving", rep.meet_preserving},
                {"injective", rep.injective},
                {"non_injective_witness", wit(rep.non_injective_witness)},
                {"meet_failure_witness", wit(rep.meet_failure_witness)}};
    r.code = rep.all_valid && rep.all_disklike && rep.order_preserving && rep.join_preserving ? 0 : 1;
  } else {
    throw InputError("unknown universe action '" + o.action + "'");
  }
  r.artifacts.emplace_back("universe-" + o.action + ".json", r.result.dump(2) + "\n");
  return r;
}

GSet need_gset(const Options& o, const LatticePtr& lat) {
  std::string text = !o.gset.empty() ? o.gset : (!o.input.empty() ? read_file(o.input) : std::string());
  if (text.empty()) throw InputError("--gset or --input is required");
  return gset_from_json(lat, parse_json(text, "G-set"));
}

Outcome cmd_gset(const Options& o) {
  LatticePtr lat = need_lattice(o);
  Outcome r;
  const std::string& a = o.action;
  if (a == "describe") {
    GSet x = need_gset(o, lat);
    json orbits = json::array();
    for (const Orbit& ob : orbit_decompose(x).orbits)
      orbits.push_back({{"points", ob.points}, {"stabilizer", ob.stabilizer}, {"basepoint", ob.basepoint}});
    r.result = gset_to_json(x);
    r.result["orbits"] = orbits;
    r.result["isotropy"] = family_to_json(isotropy(x));
  } else if (a == "double-coset") {
    SubgroupId h = o.subgroup, k = o.k;
    if (h < 0 || k < 0 || h >= lat->size() || k >= lat->size()) throw InputError("--subgroup H and --k K are required");
    GSet lhs = restrict(GSet::orbit(lat, lat->top(), k), h);
    GSet rhs = double_coset_decompose(lat, h, k);
    IsoResult iso = iso_test(lhs, rhs);
    r.result = {{"H", h}, {"K", k}, {"isomorphic", iso.isomorphic}, {"witness", iso.witness},
                {"restricted", describe(lhs)}, {"decomposed", describe(rhs)}};
    r.code = iso.isomorphic ? 0 : 1;
  } else if (a == "random") {
    // A random G-set: orbits G/K with K drawn uniformly, until `size` is reached.
    std::mt19937_64 rng(o.seed);
    GSet x = GSet::empty(lat, lat->top());
    std::vector<SubgroupId> pool;
    for (SubgroupId k = 0; k < lat->size(); ++k)
      if (lat->index_in(k, lat->top()) <= o.size) pool.push_back(k);
    while (x.size() < o.size) {
      std::vector<SubgroupId> fit;
      for (SubgroupId k : pool)
        if (x.size() + lat->index_in(k, lat->top()) <= o.size) fit.push_back(k);
      std::uniform_int_distribution<std::size_t> pick(0, fit.size() - 1);
      x = coproduct(x, GSet::orbit(lat, lat->top(), fit[pick(rng)]));
    }
    r.result = gset_to_json(x);
  } else {
    throw InputError("unknown gset action '" + a + "'");
  }
  r.artifacts.emplace_back("gset-" + a + ".json", r.result.dump(2) + "\n");
  return r;
}

Outcome cmd_indexing(const Options& o) {
  LatticePtr lat = need_lattice(o);
  IndexingSystem ix(TransferSystem::from_pairs(lat, need_pairs(o, *lat)));
  int bound = o.bound > 0 ? o.bound : default_size_bound(*lat);
  Outcome r;
  if (o.action == "verify") {
    AxiomReport rep = verify_axioms(ix, bound);
    r.result = rep.to_json();
    r.code = rep.all_pass() ? 0 : 1;
  } else if (o.action == "level") {
    SubgroupId h = o.subgroup < 0 ? lat->top() : o.subgroup;
    if (h >= lat->size()) throw InputError("--subgroup out of range");
    json types = json::array();
    for (const OrbitType& t : level(ix, h, bound)) types.push_back(t.to_string(*lat));
    r.result = {{"subgroup", h}, {"bound", bound}, {"admissible", types}};
  } else {
    throw InputError("unknown indexing action '" + o.action + "'");
  }
  r.artifacts.emplace_back("indexing-" + o.action + ".json", r.result.dump(2) + "\n");
  return r;
}

std::vector<AbelianGGroup::Carrier> carriers(const std::string& name) {
  using C = AbelianGGroup::Carrier;
  std::vector<C> all{C::Z2, C::Z3, C::Z4, C::Z2xZ2}, out;
  for (C c : all)
    if (name == "all" || name == carrier_name(c)) out.push_back(c);
  if (out.empty()) throw InputError("unknown carrier '" + name + "' (Z/2, Z/3, Z/4, Z/2xZ/2 or all)");
  return out;
}

PermCat need_permcat(const Options& o, const LatticePtr& lat) {
  if (!o.input.empty()) return permcat_from_json(parse_json(read_file(o.input), o.input));
  if (o.permcat == "skeletal") return skeletal_sets_seed(lat, o.n);
  if (o.permcat == "broken") return broken_untwistor_seed(lat);
  if (o.permcat.rfind("discrete", 0) == 0) {
    std::string c = o.permcat.size() > 9 ? o.permcat.substr(9) : "Z/2";
    AbelianGGroup m = AbelianGGroup::with_trivial_action(lat, carriers(c).front());
    GSet t = GSet::trivial(lat, lat->top(), o.n);
    return discrete_monoid_seed(m, &t);
  }
  throw InputError("unknown permutative seed '" + o.permcat + "'");
}

Outcome cmd_segal(const Options& o) {
  LatticePtr lat = need_lattice(o);
  Outcome r;
  const std::string& a = o.action;
  if (a == "xm") {
    int bound = o.bound > 0 ? o.bound : 4;
    std::optional<IndexingSystem> ix;
    if (!o.pairs.empty() || !o.input.empty()) ix.emplace(TransferSystem::from_pairs(lat, need_pairs(o, *lat)));
    json rows = json::array();
    bool ok = true;
    std::size_t checked = 0;
    for (auto c : carriers(o.carrier))
      for (const AbelianGGroup& m : AbelianGGroup::all_actions(lat, c))
        for (const OrbitType& t : orbit_types_up_to(*lat, lat->top(), bound)) {
          GSet ts = from_orbit_type(lat, t);
          if (ix && !admits(ts, *ix).admissible) continue;
          SegalCheck sc = segal_bijection_check(m, add_basepoint(ts));
          ++checked;
          if (!sc.ok()) {
            ok = false;
            rows.push_back({{"carrier", m.name()}, {"gset", t.to_string(*lat)}, {"bijective", sc.bijective},
                            {"equivariant", sc.equivariant}, {"twisted_matches", sc.twisted_matches}});
          }
        }
    r.result = {{"checked", checked}, {"pass", ok}, {"failures", rows}};
    r.code = ok ? 0 : 1;
  } else if (a == "mackey") {
    IndexingSystem ix(TransferSystem::from_pairs(lat, need_pairs(o, *lat)));
    json rows = json::array();
    bool ok = true;
    for (auto c : carriers(o.carrier))
      for (const AbelianGGroup& m : AbelianGGroup::all_actions(lat, c)) {
        MackeyReport rep = verify_semi_mackey(m, ix);
        ok = ok && rep.pass;
        json row = rep.to_json(*lat);
        row["carrier"] = m.name();
        rows.push_back(row);
      }
    r.result = {{"pass", ok}, {"reports", rows}};
    r.code = ok ? 0 : 1;
  } else if (a == "certify") {
    PermCat base = need_permcat(o, lat);
    int n = base.has_norms() ? base.norms().n : o.n;
    AbarCategory abar = build_Abar(base, n);
    json info = {{"seed", base.name()}, {"n", n}, {"objects", abar.object_count()}, {"morphisms", abar.morphism_count()}};
    try {
      Certificate cert = certify_equivalence(abar);
      r.result = {{"abar", info}, {"pass", true}, {"certificate", cert.to_json()}};
    } catch (const DiagramFailure& e) {
      r.result = {{"abar", info}, {"pass", false}, {"failure", e.what()}};
      r.code = 1;
    }
  } else if (a == "seed") {
    r.result = permcat_to_json(need_permcat(o, lat));
  } else {
    throw InputError("unknown segal action '" + a + "'");
  }
  r.artifacts.emplace_back("segal-" + a + ".json", r.result.dump(2) + "\n");
  return r;
}

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* fixed = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::atoll(fixed));
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void persist(const Options& o, const std::vector<std::string>& args, const Outcome& r) {
  fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + o.out + "'");
  std::string all;
  json names = json::array();
  for (const auto& [name, content] : r.artifacts) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw InputError("cannot write '" + (dir / name).string() + "'");
    f << content;
    all += name + '\n' + content;
    names.push_back(name);
  }
  std::string command;
  for (const auto& a : args) command += (command.empty() ? "" : " ") + a;
  std::string group_hash;
  try {
    group_hash = group_from_spec(o.group).hash();
  } catch (const Error&) {
  }
  json run = {{"command", command},
              {"group_hash", group_hash},
              {"timestamp", timestamp()},
              {"result_digest", sha256_hex(all)},
              {"artifacts", names}};
  std::ofstream f(dir / "run.json", std::ios::binary);
  f << run.dump(2) << "\n";
}

bool is_verdict(const std::string& kind) {
  return kind == "NotDiskLike" || kind == "NoWitness" || kind == "DiagramFailure";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"transferkit: transfer systems, indexing systems and their Segal layer"};
  app.require_subcommand(1);
  Options o;
  struct Command {
    const char* name;
    const char* help;
    std::vector<std::string> actions;
    Outcome (*run)(const Options&);
  };
  const std::vector<Command> commands = {
      {"transfer", "enumerate, check, complete and draw transfer systems",
       {"enumerate", "check", "disklike", "hasse", "complete", "lattice"}, cmd_transfer},
      {"family", "families, Φ and transfer-like families", {"generate", "check", "phi", "census"}, cmd_family},
      {"universe", "transfer systems of G-universes", {"system", "lattice"}, cmd_universe},
      {"gset", "finite G-sets", {"describe", "double-coset", "random"}, cmd_gset},
      {"indexing", "indexing systems and the axioms I1-I8", {"verify", "level"}, cmd_indexing},
      {"segal", "X_M, semi-Mackey checks and the Ā_n certificate", {"xm", "mackey", "certify", "seed"}, cmd_segal},
  };
  std::vector<CLI::App*> subs;
  for (const Command& c : commands) {
    CLI::App* s = app.add_subcommand(c.name, c.help);
    s->add_option("action", o.action, "what to do")->required()->check(CLI::IsMember(c.actions));
    s->add_option("--group", o.group, "builtin group name or JSON group file");
    s->add_option("--pairs", o.pairs, "JSON list of [K, H] subgroup indices");
    s->add_option("--input", o.input, "input file");
    s->add_option("--out", o.out, "directory for artifacts and run.json");
    s->add_option("--format", o.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    s->add_option("--seed", o.seed, "random seed");
    s->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    s->add_option("--bound", o.bound, "size bound");
    if (std::string(c.name) == "family") s->add_option("--members", o.members, "JSON list of subgroup indices");
    if (std::string(c.name) == "universe") s->add_option("--irreps", o.irreps, "JSON list of irreducible labels");
    if (std::string(c.name) == "gset") {
      s->add_option("--gset", o.gset, "JSON G-set");
      s->add_option("--k", o.k, "subgroup K");
      s->add_option("--size", o.size, "number of points");
    }
    if (std::string(c.name) == "gset" || std::string(c.name) == "indexing")
      s->add_option("--subgroup", o.subgroup, "subgroup H");
    if (std::string(c.name) == "segal") {
      s->add_option("--carrier", o.carrier, "Z/2, Z/3, Z/4, Z/2xZ/2 or all");
      s->add_option("--permcat", o.permcat, "skeletal, broken, discrete:<carrier>");
      s->add_option("--n", o.n, "number of points");
    }
    subs.push_back(s);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    Outcome r;
    for (std::size_t i = 0; i < commands.size(); ++i)
      if (subs[i]->parsed()) r = commands[i].run(o);
    if (r.result.contains("dot") && (o.format == "dot" || o.action == "hasse"))
      out << r.result["dot"].get<std::string>();
    else
      out << r.result.dump(2) << "\n";
    if (!o.out.empty()) persist(o, args, r);
    return r.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_verdict(e.kind()) ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace transferkit
