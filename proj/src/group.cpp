#include "transferkit/group.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "transferkit/digest.hpp"
#include "transferkit/error.hpp"

namespace transferkit {

namespace {

constexpr int kMaxTableOrder = 255;

Perm compose(const Perm& p, const Perm& q) {  // p after q
  Perm r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

bool is_permutation_of(const Perm& p, int degree) {
  if (static_cast<int>(p.size()) != degree) return false;
  std::vector<char> seen(degree, 0);
  for (int v : p) {
    if (v < 0 || v >= degree || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw InputError("bad integer '" + std::string(s) + "'");
  return v;
}

Group perm_group(std::string name, int degree, bool even_only) {
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> all;
  do {
    if (even_only) {
      int inversions = 0;
      for (int i = 0; i < degree; ++i)
        for (int j = i + 1; j < degree; ++j) inversions += p[i] > p[j];
      if (inversions % 2) continue;
    }
    all.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return Group::from_generators(std::move(name), degree, all);
}

Group single_builtin(std::string_view part) {
  std::string s(part);
  if (s == "trivial" || s == "e") return single_builtin("C_1");
  if (s.size() < 2) throw InputError("unknown builtin group '" + s + "'");
  char kind = s[0];
  std::string_view rest = std::string_view(s).substr(1);
  if (!rest.empty() && rest[0] == '_') rest.remove_prefix(1);
  int n = parse_int(rest);
  std::string name = std::string(1, kind) + "_" + std::to_string(n);
  switch (kind) {
    case 'C': {
      if (n < 1 || n > kMaxTableOrder) throw InputError("cyclic order out of range: " + s);
      std::vector<std::vector<int>> t(n, std::vector<int>(n));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
      Group g = Group::from_table(name, t);
      return g;
    }
    case 'S':
    case 'A':
      if (n < 1 || n > 5) throw InputError("symmetric/alternating degree must be 1..5: " + s);
      return perm_group(name, n, kind == 'A');
    case 'D': {
      if (n < 2 || 2 * n > kMaxTableOrder) throw InputError("dihedral parameter out of range: " + s);
      int m = 2 * n;
      std::vector<std::vector<int>> t(m, std::vector<int>(m));
      for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
          int k1 = x % n, e1 = x / n, k2 = y % n, e2 = y / n;
          int k = ((e1 ? k1 - k2 : k1 + k2) % n + n) % n;
          t[x][y] = ((e1 ^ e2) * n) + k;
        }
      return Group::from_table(name, t);
    }
    default:
      throw InputError("unknown builtin group '" + s + "'");
  }
}

}  // namespace

std::string cycle_notation(const Perm& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

Perm parse_cycles(std::string_view text, int degree) {
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0);
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') { ++i; continue; }
    if (text[i] == 'e' && text.size() == 1) break;
    if (text[i] != '(') throw InputError("bad cycle notation '" + std::string(text) + "'");
    std::size_t close = text.find(')', i);
    if (close == std::string_view::npos) throw InputError("unclosed cycle in '" + std::string(text) + "'");
    std::vector<int> cyc;
    std::istringstream in(std::string(text.substr(i + 1, close - i - 1)));
    int v;
    while (in >> v) {
      if (v < 1 || v > degree) throw InputError("cycle point out of range in '" + std::string(text) + "'");
      cyc.push_back(v - 1);
    }
    Perm c(degree);
    std::iota(c.begin(), c.end(), 0);
    for (std::size_t k = 0; k < cyc.size(); ++k) c[cyc[k]] = cyc[(k + 1) % cyc.size()];
    p = compose(p, c);
    i = close + 1;
  }
  return p;
}

Group Group::from_table(std::string name, const std::vector<std::vector<int>>& table) {
  int n = static_cast<int>(table.size());
  if (n < 1) throw InputError("group table is empty");
  if (n > kMaxTableOrder) throw OrderBoundExceeded("table order " + std::to_string(n) + " exceeds " + std::to_string(kMaxTableOrder));
  Group g;
  g.n_ = n;
  g.name_ = std::move(name);
  g.table_.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n) throw InputError("group table is not square (row " + std::to_string(a) + ")");
    for (int b = 0; b < n; ++b) {
      int v = table[a][b];
      if (v < 0 || v >= n) throw InputError("table entry out of range at (" + std::to_string(a) + "," + std::to_string(b) + ")");
      g.table_[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint8_t>(v);
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw NonAssociative("witness (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
  int id = -1;
  for (int e = 0; e < n && id < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = g.mul(e, x) == x && g.mul(x, e) == x;
    if (ok) id = e;
  }
  if (id < 0) throw NoIdentity("no element is a two-sided unit");
  g.identity_ = id;
  g.inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (g.mul(a, b) == id && g.mul(b, a) == id) { g.inv_[a] = b; break; }
    if (g.inv_[a] < 0) throw NoInverse("witness element " + std::to_string(a));
  }
  g.finish();
  return g;
}

Group Group::from_generators(std::string name, int degree, const std::vector<Perm>& gens) {
  if (degree < 1) throw InputError("permutation degree must be positive");
  for (const auto& p : gens)
    if (!is_permutation_of(p, degree)) throw InputError("generator is not a permutation of 0.." + std::to_string(degree - 1));
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::set<Perm> seen{id};
  std::queue<Perm> todo;
  todo.push(id);
  while (!todo.empty()) {
    Perm p = todo.front();
    todo.pop();
    for (const auto& s : gens) {
      Perm q = compose(s, p);
      if (seen.insert(q).second) {
        if (static_cast<int>(seen.size()) > kMaxTableOrder)
          throw OrderBoundExceeded("generated group exceeds order " + std::to_string(kMaxTableOrder));
        todo.push(std::move(q));
      }
    }
  }
  std::vector<Perm> elems(seen.begin(), seen.end());
  std::map<Perm, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
  int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = index.at(compose(elems[a], elems[b]));
  Group g = from_table(std::move(name), t);
  g.perms_ = std::move(elems);
  g.labels_.clear();
  for (const auto& p : g.perms_) g.labels_.push_back(cycle_notation(p));
  return g;
}

Group Group::direct_product(const Group& a, const Group& b) {
  int n = a.order() * b.order();
  if (n > kMaxTableOrder) throw OrderBoundExceeded("product order " + std::to_string(n) + " exceeds " + std::to_string(kMaxTableOrder));
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int xa = x / b.order(), xb = x % b.order(), ya = y / b.order(), yb = y % b.order();
      t[x][y] = a.mul(xa, ya) * b.order() + b.mul(xb, yb);
    }
  Group g = from_table(a.name() + "x" + b.name(), t);
  g.labels_.clear();
  for (int x = 0; x < n; ++x)
    g.labels_.push_back("(" + a.element_label(x / b.order()) + "," + b.element_label(x % b.order()) + ")");
  return g;
}

Group Group::builtin(std::string_view name) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : name) {
    if (c == 'x') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  Group g = single_builtin(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i) g = direct_product(g, single_builtin(parts[i]));
  if (parts.size() == 1 && g.name_[0] == 'C') g.cyclic_ = g.n_;
  if (parts.size() == 1 && g.name_[0] == 'D') {
    int n = g.n_ / 2;
    g.labels_.clear();
    for (int x = 0; x < g.n_; ++x) {
      int k = x % n;
      std::string r = k == 0 ? "" : (k == 1 ? "r" : "r^" + std::to_string(k));
      if (x / n) r += "s";
      g.labels_.push_back(r.empty() ? "e" : r);
    }
  }
  return g;
}

std::vector<std::string> Group::builtin_catalog(int max_order) {
  std::vector<std::pair<std::string, int>> all;
  for (int n = 1; n <= 24; ++n) all.push_back({"C_" + std::to_string(n), n});
  for (int n = 3; n <= 5; ++n) all.push_back({"S_" + std::to_string(n), n == 3 ? 6 : n == 4 ? 24 : 120});
  all.push_back({"A_4", 12});
  all.push_back({"A_5", 60});
  for (int n = 2; n <= 12; ++n) all.push_back({"D_" + std::to_string(n), 2 * n});
  const std::pair<const char*, int> products[] = {
      {"C_2xC_2", 4},   {"C_2xC_4", 8},     {"C_2xC_2xC_2", 8}, {"C_3xC_3", 9},  {"C_2xC_6", 12},
      {"C_2xS_3", 12},  {"C_4xC_4", 16},    {"C_2xC_8", 16},    {"C_2xD_4", 16}, {"C_2xC_2xC_4", 16},
      {"C_3xS_3", 18},  {"C_3xC_6", 18},    {"C_2xA_4", 24},    {"C_2xC_2xC_6", 24}};
  for (const auto& [nm, ord] : products) all.push_back({nm, ord});
  std::vector<std::string> out;
  for (const auto& [nm, ord] : all)
    if (ord <= max_order) out.push_back(nm);
  return out;
}

void Group::finish() {
  if (inv_.empty()) {
    inv_.assign(n_, 0);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (mul(a, b) == identity_) inv_[a] = b;
  }
  // Greedy generating set: scan elements in index order, keep those outside
  // the subgroup generated so far.
  gens_.clear();
  std::vector<char> in(n_, 0);
  in[identity_] = 1;
  for (int g = 0; g < n_; ++g) {
    if (in[g]) continue;
    gens_.push_back(g);
    std::vector<int> elems;
    for (int x = 0; x < n_; ++x)
      if (in[x]) elems.push_back(x);
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (int s : gens_) {
        int y = mul(elems[i], s);
        if (!in[y]) {
          in[y] = 1;
          elems.push_back(y);
        }
      }
  }
  labels_.clear();
  for (int a = 0; a < n_; ++a) labels_.push_back(a == identity_ ? "e" : "g" + std::to_string(a));
}

Element Group::power(Element a, int k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Element r = identity_;
  for (int i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

int Group::element_order(Element a) const {
  int k = 1;
  for (Element x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

bool Group::is_abelian() const {
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::optional<Element> Group::element_of(const Perm& p) const {
  auto it = std::lower_bound(perms_.begin(), perms_.end(), p);
  if (it == perms_.end() || *it != p) return std::nullopt;
  return static_cast<Element>(it - perms_.begin());
}

std::string Group::element_label(Element a) const {
  if (cyclic_) return std::to_string(a);
  return labels_.at(a);
}

std::vector<std::vector<int>> Group::table() const {
  std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) t[a][b] = mul(a, b);
  return t;
}

std::string Group::hash() const {
  std::string data = "transferkit-group-v1:" + std::to_string(n_) + ":";
  data.append(reinterpret_cast<const char*>(table_.data()), table_.size());
  return sha256_hex(data);
}

}  // namespace transferkit
