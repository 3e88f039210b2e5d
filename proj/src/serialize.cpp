#include "transferkit/serialize.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "transferkit/error.hpp"

namespace transferkit {

using nlohmann::json;

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + what + ": " + e.what());
  }
}

Group group_from_json(const json& j) {
  try {
    std::string name = j.value("name", std::string("G"));
    if (j.contains("table")) return Group::from_table(name, j.at("table").get<std::vector<std::vector<int>>>());
    int degree = j.at("degree").get<int>();
    std::vector<Perm> gens;
    for (const auto& g : j.at("generators")) {
      if (g.is_string())
        gens.push_back(parse_cycles(g.get<std::string>(), degree));
      else
        gens.push_back(g.get<Perm>());
    }
    return Group::from_generators(name, degree, gens);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed group description: ") + e.what());
  }
}

json group_to_json(const Group& g) {
  return {{"name", g.name()}, {"order", g.order()}, {"table", g.table()}, {"hash", g.hash()}};
}

Group group_from_spec(const std::string& spec) {
  std::error_code ec;
  if (spec.find(".json") != std::string::npos || std::filesystem::is_regular_file(spec, ec)) {
    std::ifstream in(spec);
    if (!in) throw InputError("cannot read group file '" + spec + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return group_from_json(parse_json(ss.str(), spec));
  }
  return Group::builtin(spec);
}

json lattice_to_json(const SubgroupLattice& lat) {
  json subs = json::array();
  for (SubgroupId h = 0; h < lat.size(); ++h)
    subs.push_back({{"index", h},
                    {"order", lat.order_of(h)},
                    {"label", lat.label(h)},
                    {"class", lat.class_of(h)},
                    {"elements", lat.elements(h)}});
  return {{"group", lat.group().name()}, {"subgroups", subs}};
}

std::vector<Pair> pairs_from_json(const SubgroupLattice& lat, const json& j) {
  if (!j.is_array()) throw InputError("pairs must be a JSON array of [K, H]");
  std::vector<Pair> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
      throw InputError("each pair must be [K, H] with integer subgroup indices");
    int k = p[0].get<int>(), h = p[1].get<int>();
    if (k < 0 || h < 0 || k >= lat.size() || h >= lat.size())
      throw InputError("subgroup index out of range in pair [" + std::to_string(k) + "," + std::to_string(h) + "]");
    out.emplace_back(k, h);
  }
  return out;
}

json pairs_to_json(const std::vector<Pair>& pairs) {
  json a = json::array();
  for (auto [k, h] : pairs) a.push_back({k, h});
  return a;
}

json transfer_to_json(const TransferSystem& t) {
  return {{"pairs", pairs_to_json(t.pairs())}, {"text", pairs_to_string(t.lattice(), t.pairs())}};
}

std::vector<SubgroupId> subgroups_from_json(const SubgroupLattice& lat, const json& j) {
  if (!j.is_array()) throw InputError("expected a JSON array of subgroup indices");
  std::vector<SubgroupId> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InputError("subgroup indices must be integers");
    int k = v.get<int>();
    if (k < 0 || k >= lat.size()) throw InputError("subgroup index " + std::to_string(k) + " out of range");
    out.push_back(k);
  }
  return out;
}

json family_to_json(const Family& f) {
  json labels = json::array();
  for (SubgroupId k : f.members()) labels.push_back(f.lattice().label(k));
  return {{"ambient", f.ambient()}, {"members", f.members()}, {"labels", labels}, {"based", f.based()}};
}

GSet gset_from_json(const LatticePtr& lat, const json& j) {
  try {
    SubgroupId h = j.value("acting", lat->top());
    if (h < 0 || h >= lat->size()) throw InputError("acting subgroup out of range");
    bool based = j.value("based", false);
    if (j.contains("orbits")) {
      GSet x = GSet::empty(lat, h);
      for (SubgroupId k : subgroups_from_json(*lat, j.at("orbits"))) {
        if (!lat->contains(k, h)) throw InputError("orbit stabilizer is not a subgroup of the acting group");
        x = coproduct(x, GSet::orbit(lat, h, k));
      }
      return based ? add_basepoint(x) : x;
    }
    int size = j.at("size").get<int>();
    std::map<Element, Perm> images;
    for (const auto& [key, perm] : j.at("generators").items()) {
      Element a = -1;
      try {
        a = std::stoi(key);
      } catch (const std::exception&) {
        throw InputError("generator key '" + key + "' is not an element index");
      }
      if (a < 0 || a >= lat->group().order()) throw InputError("generator element out of range");
      images[a] = perm.get<Perm>();
    }
    return GSet::from_action(lat, h, size, based, images);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed G-set description: ") + e.what());
  }
}

json gset_to_json(const GSet& x) {
  json action = json::object();
  for (Element a : x.lattice().elements(x.acting())) action[std::to_string(a)] = x.permutation(a);
  OrbitType t = orbit_type(x);
  return {{"acting", x.acting()},
          {"size", x.size()},
          {"based", x.based()},
          {"action", action},
          {"orbit_type", t.classes},
          {"description", describe(x)}};
}

}  // namespace transferkit
