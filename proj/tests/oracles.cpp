#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace oracle {

using transferkit::Element;

namespace {

Mask conj_mask(const Group& g, Mask m, Element a) {
  Mask r = 0;
  for (Element x = 0; x < g.order(); ++x)
    if (m >> x & 1) r |= Mask{1} << g.mul(g.mul(a, x), g.inv(a));
  return r;
}

bool sub(Mask a, Mask b) { return (a & ~b) == 0; }

}  // namespace

std::vector<Mask> subgroups_by_scan(const Group& g) {
  int n = g.order();
  std::vector<Mask> out;
  for (Mask s = 1; s < (Mask{1} << n); ++s) {
    if (!(s & 1 << g.identity())) continue;
    bool closed = true;
    for (int a = 0; a < n && closed; ++a)
      if (s >> a & 1)
        for (int b = 0; b < n && closed; ++b)
          if (s >> b & 1) closed = s >> g.mul(a, b) & 1;
    if (closed) out.push_back(s);
  }
  return out;
}

namespace {

bool check_axioms(const Group& g, const std::vector<Mask>& subs, const std::vector<std::pair<Mask, Mask>>& rel) {
  std::set<std::pair<Mask, Mask>> r(rel.begin(), rel.end());
  auto has = [&](Mask k, Mask h) { return k == h || r.count({k, h}); };
  for (auto [k, h] : rel) {
    if (!sub(k, h) || k == h) return false;
    for (Element a = 0; a < g.order(); ++a)
      if (!has(conj_mask(g, k, a), conj_mask(g, h, a))) return false;
    for (Mask l : subs)
      if (sub(l, h) && !has(k & l, l)) return false;
    for (auto [k2, h2] : rel)
      if (k2 == h && !has(k, h2)) return false;
  }
  return true;
}

}  // namespace

bool is_transfer_system(const Group& g, const std::vector<std::pair<Mask, Mask>>& rel) {
  return check_axioms(g, subgroups_by_scan(g), rel);
}

std::vector<Bitset> transfer_systems_by_scan(const SubgroupLattice& lat) {
  const auto& pairs = lat.strict_pairs();
  std::size_t n = pairs.size();
  std::vector<Mask> subs = subgroups_by_scan(lat.group());
  std::vector<Bitset> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    std::vector<std::pair<Mask, Mask>> rel;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) rel.emplace_back(lat.mask(pairs[i].first), lat.mask(pairs[i].second));
    if (!check_axioms(lat.group(), subs, rel)) continue;
    Bitset b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = m >> i & 1;
    out.push_back(b);
  }
  return out;
}

Bitset smallest_containing(const std::vector<Bitset>& systems, const Bitset& rel) {
  Bitset acc(rel.size());
  acc.set();
  for (const Bitset& s : systems)
    if (rel.is_subset_of(s)) acc &= s;
  return acc;
}

std::vector<Mask> double_coset_masks(const Group& g, Mask h, Mask k) {
  std::vector<Mask> out;
  Mask seen = 0;
  for (Element a = 0; a < g.order(); ++a) {
    if (seen >> a & 1) continue;
    Mask orbit = 0;
    for (Element x = 0; x < g.order(); ++x)
      if (h >> x & 1)
        for (Element y = 0; y < g.order(); ++y)
          if (k >> y & 1) orbit |= Mask{1} << g.mul(g.mul(x, a), g.inv(y));
    seen |= orbit;
    out.push_back(orbit);
  }
  return out;
}

std::vector<std::vector<int>> orbits(const GSet& x) {
  std::vector<Element> acting = x.lattice().elements(x.acting());
  std::vector<int> comp(x.size(), -1);
  std::vector<std::vector<int>> out;
  for (int p = 0; p < x.size(); ++p) {
    if (comp[p] >= 0) continue;
    std::vector<int> orbit{p};
    comp[p] = static_cast<int>(out.size());
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (Element a : acting) {
        int q = x.act(a, orbit[i]);
        if (comp[q] < 0) {
          comp[q] = comp[p];
          orbit.push_back(q);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(orbit);
  }
  return out;
}

bool isomorphic_by_search(const GSet& x, const GSet& y) {
  if (x.size() != y.size() || x.acting() != y.acting() || x.based() != y.based()) return false;
  std::vector<Element> acting = x.lattice().elements(x.acting());
  int n = x.size();
  std::vector<int> f(n, -1);
  std::vector<char> used(n, 0);
  // Assign points in order; an assignment is consistent when every acting
  // element maps assigned pairs to compatible pairs.
  std::function<bool(int)> rec = [&](int p) {
    if (p == n) return true;
    if (f[p] >= 0) return rec(p + 1);
    for (int q = 0; q < n; ++q) {
      if (used[q]) continue;
      if (x.based() && ((p == 0) != (q == 0))) continue;
      // Extending p ↦ q forces a·p ↦ a·q for the whole orbit.
      std::vector<std::pair<int, int>> added;
      bool ok = true;
      for (Element a : acting) {
        int xp = x.act(a, p), yq = y.act(a, q);
        if (f[xp] < 0) {
          if (used[yq]) {
            ok = false;
            break;
          }
          f[xp] = yq;
          used[yq] = 1;
          added.emplace_back(xp, yq);
        } else if (f[xp] != yq) {
          ok = false;
          break;
        }
      }
      if (ok && rec(p + 1)) return true;
      for (auto [xp, yq] : added) {
        f[xp] = -1;
        used[yq] = 0;
      }
    }
    return false;
  };
  return rec(0);
}

std::uint64_t hom_count_by_enumeration(const GSet& x, const GSet& y) {
  std::vector<Element> acting = x.lattice().elements(x.acting());
  bool based = x.based() && y.based();
  int n = x.size(), m = y.size();
  if (n == 0) return 1;
  if (m == 0) return 0;
  std::vector<int> f(n, 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = !based || f[0] == 0;
    for (Element a : acting)
      for (int p = 0; p < n && ok; ++p) ok = f[x.act(a, p)] == y.act(a, f[p]);
    count += ok;
    int i = 0;
    while (i < n && ++f[i] == m) f[i++] = 0;
    if (i == n) break;
  }
  return count;
}

std::vector<Mask> cyclic_point_stabilizers(int n, const std::vector<int>& reps) {
  // Coordinates: per copy of each rep, sign is 1-dimensional, V(k) 2-dimensional.
  struct Block {
    int rep;
    int dim;
  };
  std::vector<Block> blocks;
  for (int r : reps)
    for (int copy = 0; copy < 2; ++copy) blocks.push_back({r, r == 0 ? 1 : 2});
  const double pi = std::acos(-1.0);
  auto act = [&](int g, const std::vector<double>& v) {
    std::vector<double> w;
    std::size_t i = 0;
    for (const Block& b : blocks) {
      if (b.rep == 0) {
        w.push_back(g % 2 ? -v[i] : v[i]);
      } else {
        double th = 2 * pi * b.rep * g / n;
        w.push_back(std::cos(th) * v[i] - std::sin(th) * v[i + 1]);
        w.push_back(std::sin(th) * v[i] + std::cos(th) * v[i + 1]);
      }
      i += b.dim;
    }
    return w;
  };
  std::set<Mask> out;
  // Sample points: each block is either zero or a fixed generic vector.
  std::size_t nb = blocks.size();
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << nb); ++pattern) {
    std::vector<double> v;
    for (std::size_t b = 0; b < nb; ++b) {
      double s = (pattern >> b & 1) ? 1.0 : 0.0;
      v.push_back(s * (0.7 + 0.1 * b));
      if (blocks[b].dim == 2) v.push_back(s * (0.3 + 0.05 * b));
    }
    Mask stab = 0;
    for (int g = 0; g < n; ++g) {
      std::vector<double> w = act(g, v);
      bool fixed = true;
      for (std::size_t i = 0; i < v.size(); ++i) fixed = fixed && std::abs(w[i] - v[i]) < 1e-9;
      if (fixed) stab |= Mask{1} << g;
    }
    out.insert(stab);
  }
  return {out.begin(), out.end()};
}

std::size_t abar_hom_by_search(const transferkit::AbarCategory& ab, int x, int y) {
  using namespace transferkit;
  const PermCat& a = ab.base();
  const FinCategory& c = a.cat();
  const int n = ab.n(), subsets = 1 << n;
  const SystemObject& X = ab.objects()[x];
  const SystemObject& Y = ab.objects()[y];
  std::vector<int> alpha(subsets);
  std::size_t count = 0;
  std::function<void(int)> rec = [&](int s) {
    if (s == subsets) {
      for (int u = 0; u < subsets; ++u)
        for (int v = 0; v < subsets; ++v) {
          if (u & v) continue;
          int xa = X.a[u * subsets + v], yb = Y.a[u * subsets + v];
          int sum = a.tensor_morphism(alpha[u], alpha[v]);
          if (xa < 0 || yb < 0 || sum < 0) return;
          int left = c.compose(alpha[u | v], xa);
          if (left < 0 || left != c.compose(yb, sum)) return;
        }
      ++count;
      return;
    }
    for (int f : c.hom(X.A[s], Y.A[s])) {
      alpha[s] = f;
      rec(s + 1);
    }
  };
  rec(0);
  return count;
}

}  // namespace oracle
