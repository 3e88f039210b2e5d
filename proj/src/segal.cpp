#include "transferkit/segal.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "transferkit/error.hpp"

namespace transferkit {

namespace {

constexpr std::size_t kMaxTuples = 1u << 20;

struct CarrierTable {
  std::string name;
  int order;
  std::vector<int> add;
};

CarrierTable carrier_table(AbelianGGroup::Carrier c) {
  CarrierTable t;
  t.name = carrier_name(c);
  if (c == AbelianGGroup::Carrier::Z2xZ2) {
    t.order = 4;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) t.add.push_back(a ^ b);
    return t;
  }
  t.order = c == AbelianGGroup::Carrier::Z2 ? 2 : c == AbelianGGroup::Carrier::Z3 ? 3 : 4;
  for (int a = 0; a < t.order; ++a)
    for (int b = 0; b < t.order; ++b) t.add.push_back((a + b) % t.order);
  return t;
}

// Automorphisms of (Z, add) as permutations fixing 0, lexicographically.
std::vector<Perm> automorphisms(int m, const std::vector<int>& add) {
  std::vector<Perm> out;
  Perm p(m);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (int a = 0; a < m && ok; ++a)
      for (int b = 0; b < m && ok; ++b) ok = p[add[a * m + b]] == add[p[a] * m + p[b]];
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin() + 1, p.end()));
  return out;
}

// Extends generator images to a table indexed by group element, or returns
// nothing when the assignment is not a homomorphism.
std::optional<std::vector<int>> extend_action(const Group& g, int m, const std::vector<Element>& gens,
                                              const std::vector<Perm>& images) {
  std::vector<int> act(static_cast<std::size_t>(g.order()) * m, -1);
  std::vector<char> known(g.order(), 0);
  for (int a = 0; a < m; ++a) act[g.identity() * m + a] = a;
  known[g.identity()] = 1;
  std::vector<Element> queue{g.identity()};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Element x = queue[qi];
    for (std::size_t j = 0; j < gens.size(); ++j) {
      Element y = g.mul(gens[j], x);
      if (known[y]) continue;
      known[y] = 1;
      for (int a = 0; a < m; ++a) act[y * m + a] = images[j][act[x * m + a]];
      queue.push_back(y);
    }
  }
  if (static_cast<int>(queue.size()) != g.order()) return std::nullopt;
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < g.order(); ++y)
      for (int a = 0; a < m; ++a)
        if (act[g.mul(x, y) * m + a] != act[x * m + act[y * m + a]]) return std::nullopt;
  return act;
}

}  // namespace

const char* carrier_name(AbelianGGroup::Carrier c) {
  switch (c) {
    case AbelianGGroup::Carrier::Z2: return "Z/2";
    case AbelianGGroup::Carrier::Z3: return "Z/3";
    case AbelianGGroup::Carrier::Z4: return "Z/4";
    case AbelianGGroup::Carrier::Z2xZ2: return "Z/2xZ/2";
  }
  return "?";
}

AbelianGGroup::AbelianGGroup(LatticePtr lattice, std::string name, int order, std::vector<int> add_table,
                             std::vector<int> action)
    : lattice_(std::move(lattice)), name_(std::move(name)), m_(order), add_(std::move(add_table)),
      act_(std::move(action)) {
  const Group& g = lattice_->group();
  if (m_ < 1) throw InputError("abelian group needs at least one element");
  if (add_.size() != static_cast<std::size_t>(m_) * m_) throw InputError("addition table has the wrong shape");
  if (act_.size() != static_cast<std::size_t>(g.order()) * m_) throw InputError("action table has the wrong shape");
  for (int v : add_)
    if (v < 0 || v >= m_) throw InputError("addition table leaves the carrier");
  for (int a = 0; a < m_; ++a) {
    if (add(0, a) != a) throw InputError("element 0 is not the zero");
    for (int b = 0; b < m_; ++b) {
      if (add(a, b) != add(b, a)) throw InputError("addition is not commutative");
      for (int c = 0; c < m_; ++c)
        if (add(add(a, b), c) != add(a, add(b, c))) throw InputError("addition is not associative");
    }
  }
  neg_.assign(m_, -1);
  for (int a = 0; a < m_; ++a)
    for (int b = 0; b < m_; ++b)
      if (add(a, b) == 0) neg_[a] = b;
  for (int a = 0; a < m_; ++a)
    if (neg_[a] < 0) throw InputError("element " + std::to_string(a) + " has no negative");
  for (Element x = 0; x < g.order(); ++x) {
    std::vector<char> seen(m_, 0);
    for (int a = 0; a < m_; ++a) {
      int v = act(x, a);
      if (v < 0 || v >= m_ || seen[v]) throw InputError("action of " + g.element_label(x) + " is not a bijection");
      seen[v] = 1;
    }
    if (act(x, 0) != 0) throw InputError("action of " + g.element_label(x) + " moves zero");
    for (int a = 0; a < m_; ++a)
      for (int b = 0; b < m_; ++b)
        if (act(x, add(a, b)) != add(act(x, a), act(x, b)))
          throw InputError("action of " + g.element_label(x) + " is not additive");
    for (Element y = 0; y < g.order(); ++y)
      for (int a = 0; a < m_; ++a)
        if (act(g.mul(x, y), a) != act(x, act(y, a))) throw InputError("action is not a homomorphism");
  }
  for (int a = 0; a < m_; ++a)
    if (act(g.identity(), a) != a) throw InputError("identity acts nontrivially");
}

AbelianGGroup AbelianGGroup::with_trivial_action(LatticePtr lattice, Carrier c) {
  CarrierTable t = carrier_table(c);
  int n = lattice->group().order();
  std::vector<int> act;
  for (int x = 0; x < n; ++x)
    for (int a = 0; a < t.order; ++a) act.push_back(a);
  return AbelianGGroup(std::move(lattice), t.name, t.order, t.add, act);
}

std::vector<AbelianGGroup> AbelianGGroup::all_actions(LatticePtr lattice, Carrier c) {
  CarrierTable t = carrier_table(c);
  const Group& g = lattice->group();
  std::vector<Perm> auts = automorphisms(t.order, t.add);
  const std::vector<Element>& gens = g.generators();
  std::vector<AbelianGGroup> out;
  std::vector<std::size_t> choice(gens.size(), 0);
  while (true) {
    std::vector<Perm> images;
    for (std::size_t c2 : choice) images.push_back(auts[c2]);
    if (auto act = extend_action(g, t.order, gens, images)) {
      std::string name = t.name;
      bool trivial = std::all_of(choice.begin(), choice.end(), [](std::size_t v) { return v == 0; });
      if (!trivial) {
        name += "[";
        for (std::size_t j = 0; j < gens.size(); ++j) {
          if (j) name += ",";
          name += g.element_label(gens[j]) + ":";
          for (int v : images[j]) name += std::to_string(v);
        }
        name += "]";
      }
      out.emplace_back(lattice, name, t.order, t.add, *act);
    }
    std::size_t j = gens.size();
    while (j > 0) {
      --j;
      if (++choice[j] < auts.size()) break;
      choice[j] = 0;
      if (j == 0) return out;
    }
    if (gens.empty()) return out;
  }
}

AbelianGGroup AbelianGGroup::cyclic_with_action(LatticePtr lattice, int m, const std::vector<int>& multipliers) {
  const Group& g = lattice->group();
  const std::vector<Element>& gens = g.generators();
  if (multipliers.size() != gens.size()) throw InputError("one multiplier per generator is required");
  std::vector<int> add;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) add.push_back((a + b) % m);
  std::vector<Perm> images;
  for (int k : multipliers) {
    Perm p(m);
    for (int a = 0; a < m; ++a) p[a] = static_cast<int>(((static_cast<long>(k) * a) % m + m) % m);
    images.push_back(p);
  }
  auto act = extend_action(g, m, gens, images);
  if (!act) throw InputError("multipliers do not define an action");
  return AbelianGGroup(std::move(lattice), "Z/" + std::to_string(m), m, add, *act);
}

bool AbelianGGroup::is_fixed(SubgroupId h, int a) const {
  for (Element x : lattice_->elements(h))
    if (act(x, a) != a) return false;
  return true;
}

std::vector<int> AbelianGGroup::fixed_points(SubgroupId h) const {
  std::vector<int> out;
  for (int a = 0; a < m_; ++a)
    if (is_fixed(h, a)) out.push_back(a);
  return out;
}

std::vector<int> decode_tuple(const AbelianGGroup& m, int code, int n) {
  std::vector<int> x(n);
  for (int i = n - 1; i >= 0; --i) {
    x[i] = code % m.order();
    code /= m.order();
  }
  return x;
}

int encode_tuple(const AbelianGGroup& m, const std::vector<int>& tuple) {
  int code = 0;
  for (int v : tuple) code = code * m.order() + v;
  return code;
}

std::vector<int> apply_map(const AbelianGGroup& m, const std::vector<int>& phi, int target_size,
                           const std::vector<int>& tuple) {
  if (phi.size() != tuple.size() + 1) throw InputError("based map and tuple sizes differ");
  if (phi.empty() || phi[0] != 0) throw InputError("map does not preserve the basepoint");
  std::vector<int> out(target_size, 0);
  for (std::size_t j = 1; j < phi.size(); ++j) {
    int i = phi[j];
    if (i < 0 || i > target_size) throw InputError("map leaves its target");
    if (i > 0) out[i - 1] = m.add(out[i - 1], tuple[j - 1]);
  }
  return out;
}

GSet build_XM(const AbelianGGroup& m, const GSet& t) {
  if (!t.based()) throw InputError("X_M needs a based G-set");
  if (t.lattice_ptr() != m.lattice_ptr()) throw InputError("G-set and coefficients use different groups");
  const Group& g = t.lattice().group();
  int n = t.size() - 1;
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) {
    count *= m.order();
    if (count > kMaxTuples) throw SizeBoundExceeded("M^n has more than 2^20 tuples");
  }
  int size = static_cast<int>(count);
  std::vector<int> images(static_cast<std::size_t>(g.order()) * size, -1);
  for (Element x : t.lattice().elements(t.acting())) {
    Element xi = g.inv(x);
    for (int code = 0; code < size; ++code) {
      std::vector<int> a = decode_tuple(m, code, n), b(n);
      for (int i = 1; i <= n; ++i) b[i - 1] = m.act(x, a[t.act(xi, i) - 1]);
      images[static_cast<std::size_t>(x) * size + code] = encode_tuple(m, b);
    }
  }
  return make_gset(t.lattice_ptr(), t.acting(), size, true, std::move(images));
}

SegalCheck segal_bijection_check(const AbelianGGroup& m, const GSet& t) {
  GSet x = build_XM(m, t);
  const Group& g = t.lattice().group();
  int n = t.size() - 1;
  SegalCheck out;
  out.points = static_cast<std::size_t>(x.size());

  // Based maps T_+ → M, stored as value vectors indexed by point.
  std::vector<std::vector<int>> maps;
  std::vector<int> f(n + 1, 0);
  while (true) {
    maps.push_back(f);
    int p = 1;
    while (p <= n && ++f[p] == m.order()) f[p++] = 0;
    if (p > n) break;
  }
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < maps.size(); ++i) index[maps[i]] = static_cast<int>(i);
  auto conj = [&](Element a, const std::vector<int>& h) {
    std::vector<int> r(n + 1);
    Element ai = g.inv(a);
    for (int p = 0; p <= n; ++p) r[p] = m.act(a, h[t.act(ai, p)]);
    return r;
  };

  std::vector<int> delta(x.size());
  std::vector<char> hit(maps.size(), 0);
  for (int code = 0; code < x.size(); ++code) {
    std::vector<int> tuple = decode_tuple(m, code, n);
    std::vector<int> h(n + 1, 0);
    for (int j = 1; j <= n; ++j) {
      std::vector<int> kron(n + 1, 0);
      kron[j] = 1;
      h[j] = apply_map(m, kron, 1, tuple)[0];
    }
    auto it = index.find(h);
    if (it == index.end()) {
      out.bijective = false;
      continue;
    }
    delta[code] = it->second;
    if (hit[it->second]) out.bijective = false;
    hit[it->second] = 1;
  }
  if (maps.size() != static_cast<std::size_t>(x.size())) out.bijective = false;
  if (!out.bijective) return out;

  for (Element a : t.lattice().elements(t.acting())) {
    std::vector<int> phi(n + 1);
    for (int p = 0; p <= n; ++p) phi[p] = t.act(a, p);
    for (int code = 0; code < x.size(); ++code) {
      if (delta[x.act(a, code)] != index.at(conj(a, maps[delta[code]]))) out.equivariant = false;
      std::vector<int> tuple = decode_tuple(m, code, n);
      for (int& v : tuple) v = m.act(a, v);
      if (encode_tuple(m, apply_map(m, phi, n, tuple)) != x.act(a, code)) out.twisted_matches = false;
    }
  }
  return out;
}

TransferMap transfer_map(const AbelianGGroup& m, SubgroupId k, SubgroupId h) {
  const SubgroupLattice& lat = m.lattice();
  if (!lat.contains(k, h)) throw InputError("transfer needs K <= H");
  const Group& g = lat.group();
  TransferMap out{k, h, m.fixed_points(k), {}, true, true};
  std::vector<Element> reps = lat.left_coset_reps(k, h), high;
  std::vector<Element> kel = lat.elements(k);
  for (Element r : reps) {
    Element best = r;
    for (Element y : kel) best = std::max(best, g.mul(r, y));
    high.push_back(best);
  }
  for (int x : out.domain) {
    int s = 0, s2 = 0;
    for (Element r : reps) s = m.add(s, m.act(r, x));
    for (Element r : high) s2 = m.add(s2, m.act(r, x));
    out.image.push_back(s);
    if (s != s2) out.representative_independent = false;
    if (!m.is_fixed(h, s)) out.lands_in_fixed = false;
  }
  return out;
}

MackeyReport verify_semi_mackey(const AbelianGGroup& m, const IndexingSystem& ix) {
  const SubgroupLattice& lat = m.lattice();
  if (&lat != &ix.lattice()) throw InputError("coefficients and indexing system use different lattices");
  MackeyReport out;
  out.disklike = is_disklike(ix.source());
  auto transfer_value = [&](SubgroupId from, SubgroupId to, int x) {
    int s = 0;
    for (Element r : lat.left_coset_reps(from, to)) s = m.add(s, m.act(r, x));
    return s;
  };
  for (const Pair& pr : ix.source().pairs()) {
    auto [k, h] = pr;
    out.demanded.push_back(pr);
    TransferMap t = transfer_map(m, k, h);
    ++out.transfers_checked;
    if (out.pass && (!t.lands_in_fixed || !t.representative_independent)) {
      out.pass = false;
      out.witness = {{"K", k}, {"H", h}, {"failure", t.lands_in_fixed ? "representatives" : "not fixed"}};
    }
    for (SubgroupId l : lat.subgroups_of(h)) {
      std::vector<DoubleCoset> dcs = lat.double_cosets(l, k, h);
      for (std::size_t i = 0; i < t.domain.size(); ++i) {
        int x = t.domain[i];
        int rhs = 0;
        for (const DoubleCoset& dc : dcs) rhs = m.add(rhs, transfer_value(dc.intersection, l, m.act(dc.representative, x)));
        ++out.identities_checked;
        if (out.pass && rhs != t.image[i]) {
          out.pass = false;
          out.witness = {{"K", k}, {"H", h}, {"L", l}, {"x", x}, {"lhs", t.image[i]}, {"rhs", rhs}};
        }
      }
    }
  }
  return out;
}

nlohmann::json MackeyReport::to_json(const SubgroupLattice& lat) const {
  nlohmann::json d = nlohmann::json::array();
  for (auto [k, h] : demanded) d.push_back({lat.label(k), lat.label(h)});
  return {{"disklike", disklike},
          {"demanded", d},
          {"transfers_checked", transfers_checked},
          {"identities_checked", identities_checked},
          {"pass", pass},
          {"witness", witness}};
}

}  // namespace transferkit
