#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "transferkit/family.hpp"
#include "transferkit/gset.hpp"
#include "transferkit/transfer.hpp"

namespace transferkit {

// {"name", "table"} or {"name", "degree", "generators": ["(1 2)", ...]}.
Group group_from_json(const nlohmann::json& j);
nlohmann::json group_to_json(const Group& g);
// A builtin name, otherwise a path to a JSON group file.
Group group_from_spec(const std::string& spec);

nlohmann::json lattice_to_json(const SubgroupLattice& lat);

// [[K, H], ...] of subgroup indices; InputError on bad shapes or indices.
std::vector<Pair> pairs_from_json(const SubgroupLattice& lat, const nlohmann::json& j);
nlohmann::json pairs_to_json(const std::vector<Pair>& pairs);
nlohmann::json transfer_to_json(const TransferSystem& t);

std::vector<SubgroupId> subgroups_from_json(const SubgroupLattice& lat, const nlohmann::json& j);
nlohmann::json family_to_json(const Family& f);

// {"acting": H, "size": n, "based": b, "generators": {"<element>": [perm]}}
// or {"acting": H, "orbits": [K, ...], "based": b}.
GSet gset_from_json(const LatticePtr& lat, const nlohmann::json& j);
nlohmann::json gset_to_json(const GSet& x);

// Parses text as JSON, turning syntax errors into InputError.
nlohmann::json parse_json(const std::string& text, const std::string& what);

}  // namespace transferkit
