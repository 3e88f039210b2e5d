#include "transferkit/hasse.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace transferkit {

namespace {

std::string escape(const std::string& s) {
  std::string r;
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r;
}

}  // namespace

namespace {

// Pairwise scan; any list.
std::vector<std::pair<int, int>> covering_by_scan(const std::vector<TransferSystem>& systems) {
  int n = static_cast<int>(systems.size());
  std::vector<std::pair<int, int>> out;
  for (int j = 0; j < n; ++j) {
    std::vector<int> below;
    for (int i = 0; i < n; ++i)
      if (i != j && systems[i] != systems[j] && systems[i].subset_of(systems[j])) below.push_back(i);
    for (int i : below) {
      bool covered = true;
      for (int k : below)
        if (k != i && systems[k] != systems[i] && systems[i].subset_of(systems[k])) {
          covered = false;
          break;
        }
      if (covered) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace

// Every upper cover of s is the closure of s plus one missing pair, so the
// covers of s are the minimal such closures. Falls back to the pairwise scan
// when a closure is not in the list.
std::vector<std::pair<int, int>> covering_edges(const std::vector<TransferSystem>& systems) {
  std::map<Bitset, int, decltype(&bitset_less)> index(&bitset_less);
  for (std::size_t i = 0; i < systems.size(); ++i) index.emplace(systems[i].bits(), static_cast<int>(i));
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const TransferSystem& s = systems[i];
    const auto& all = s.lattice().strict_pairs();
    std::vector<Pair> base = s.pairs();
    std::vector<Bitset> ups;
    for (std::size_t p = 0; p < all.size(); ++p) {
      if (s.bits()[p]) continue;
      base.push_back(all[p]);
      Bitset c = rubin_complete(s.lattice_ptr(), base).bits();
      base.pop_back();
      if (std::find(ups.begin(), ups.end(), c) == ups.end()) ups.push_back(c);
    }
    for (const Bitset& c : ups) {
      bool minimal = std::none_of(ups.begin(), ups.end(),
                                  [&](const Bitset& d) { return d != c && d.is_subset_of(c); });
      if (!minimal) continue;
      auto it = index.find(c);
      if (it == index.end()) {
        out = covering_by_scan(systems);
        std::sort(out.begin(), out.end());
        return out;
      }
      out.emplace_back(static_cast<int>(i), it->second);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string hasse_dot(const std::vector<TransferSystem>& systems, const std::string& title) {
  return hasse_dot(systems, covering_edges(systems), title);
}

std::string hasse_dot(const std::vector<TransferSystem>& systems, const std::vector<std::pair<int, int>>& edges,
                      const std::string& title) {
  std::ostringstream os;
  os << "digraph \"" << escape(title) << "\" {\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n";
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const TransferSystem& t = systems[i];
    std::string label = pairs_to_string(t.lattice(), t.pairs());
    os << "  t" << i << " [label=\"" << i << ": " << escape(label) << "\"";
    if (is_disklike(t)) os << ", style=filled, fillcolor=lightblue";
    os << "];\n";
  }
  for (auto [a, b] : edges) os << "  t" << a << " -> t" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace transferkit
