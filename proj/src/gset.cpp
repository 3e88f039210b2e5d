#include "transferkit/gset.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>

#include "transferkit/error.hpp"

namespace transferkit {

namespace {

constexpr std::uint64_t kMaxPoints = 1u << 20;

void require_compatible(const GSet& x, const GSet& y) {
  if (x.lattice_ptr() != y.lattice_ptr() || x.acting() != y.acting())
    throw InputError("G-sets act by different groups");
}

std::vector<int> blank(const GSet& model, int size) {
  return std::vector<int>(static_cast<std::size_t>(model.lattice().group().order()) * size, -1);
}

}  // namespace

// Library constructions are correct by construction; skip the O(|H|^2 n)
// homomorphism check that user input gets.
struct GSetBuilder {
  static GSet build(LatticePtr lattice, SubgroupId acting, int size, bool based, std::vector<int> images) {
    return GSet(std::move(lattice), acting, size, based, std::move(images));
  }
};

GSet::GSet(LatticePtr lattice, SubgroupId acting, int size, bool based, std::vector<int> images)
    : lattice_(std::move(lattice)), acting_(acting), size_(size), based_(based), images_(std::move(images)) {}

GSet make_gset(LatticePtr lattice, SubgroupId acting, int size, bool based, std::vector<int> images) {
  const SubgroupLattice& lat = *lattice;
  const Group& g = lat.group();
  if (acting < 0 || acting >= lat.size()) throw InputError("acting subgroup out of range");
  if (size < 0) throw InputError("negative G-set size");
  if (based && size == 0) throw InputError("a based G-set needs its basepoint");
  if (images.size() != static_cast<std::size_t>(g.order()) * size) throw InputError("action table has the wrong shape");
  auto row = [&](Element a) { return images.begin() + static_cast<std::ptrdiff_t>(a) * size; };
  for (Element a = 0; a < g.order(); ++a) {
    bool member = lat.has_element(acting, a);
    std::vector<char> seen(size, 0);
    for (int p = 0; p < size; ++p) {
      int v = row(a)[p];
      if (!member) {
        row(a)[p] = -1;
        continue;
      }
      if (v < 0 || v >= size || seen[v]) throw InputError("action of " + g.element_label(a) + " is not a permutation");
      seen[v] = 1;
    }
    if (member && based && row(a)[0] != 0)
      throw InputError("basepoint 0 is moved by " + g.element_label(a));
  }
  for (int p = 0; p < size; ++p)
    if (row(g.identity())[p] != p) throw InputError("identity does not act trivially");
  for_each_bit(lat.mask(acting), [&](int a) {
    for_each_bit(lat.mask(acting), [&](int b) {
      Element ab = g.mul(a, b);
      for (int p = 0; p < size; ++p)
        if (row(ab)[p] != row(a)[row(b)[p]])
          throw InputError("action is not a homomorphism at (" + g.element_label(a) + ", " + g.element_label(b) +
                           ")");
    });
  });
  return GSet(std::move(lattice), acting, size, based, std::move(images));
}

GSet GSet::from_action(LatticePtr lattice, SubgroupId acting, int size, bool based,
                       const std::map<Element, Perm>& given) {
  const SubgroupLattice& lat = *lattice;
  const Group& g = lat.group();
  if (acting < 0 || acting >= lat.size()) throw InputError("acting subgroup out of range");
  if (size < 0) throw InputError("negative G-set size");
  std::vector<Perm> known(g.order());
  std::vector<char> have(g.order(), 0);
  Perm id(size);
  std::iota(id.begin(), id.end(), 0);
  known[g.identity()] = id;
  have[g.identity()] = 1;
  std::vector<Element> gens;
  for (const auto& [a, p] : given) {
    if (a < 0 || a >= g.order() || !lat.has_element(acting, a))
      throw InputError("element " + std::to_string(a) + " is not in the acting subgroup");
    if (static_cast<int>(p.size()) != size) throw InputError("permutation for element " + std::to_string(a) + " has the wrong length");
    if (a == g.identity() && p != id) throw InputError("identity must act trivially");
    gens.push_back(a);
  }
  std::queue<Element> todo;
  todo.push(g.identity());
  while (!todo.empty()) {
    Element x = todo.front();
    todo.pop();
    for (Element s : gens) {
      const Perm& ps = given.at(s);
      for (int v : ps)
        if (v < 0 || v >= size) throw InputError("permutation entry out of range");
      Element xs = g.mul(x, s);
      Perm q(size);
      for (int i = 0; i < size; ++i) q[i] = known[x][ps[i]];
      if (have[xs]) {
        if (known[xs] != q) throw InputError("given permutations do not define a homomorphism (at " + g.element_label(xs) + ")");
        continue;
      }
      known[xs] = std::move(q);
      have[xs] = 1;
      todo.push(xs);
    }
  }
  for (const auto& [a, p] : given)
    if (known[a] != p) throw InputError("given permutations do not define a homomorphism (at " + g.element_label(a) + ")");
  std::vector<int> images(static_cast<std::size_t>(g.order()) * size, -1);
  bool complete = true;
  for_each_bit(lat.mask(acting), [&](int a) {
    if (!have[a]) {
      complete = false;
      return;
    }
    std::copy(known[a].begin(), known[a].end(), images.begin() + static_cast<std::ptrdiff_t>(a) * size);
  });
  if (!complete) throw InputError("given elements do not generate the acting subgroup");
  return make_gset(std::move(lattice), acting, size, based, std::move(images));
}

GSet GSet::orbit(LatticePtr lattice, SubgroupId acting, SubgroupId k) {
  const SubgroupLattice& lat = *lattice;
  const Group& g = lat.group();
  if (!lat.contains(k, acting)) throw InputError(lat.label(k) + " is not a subgroup of " + lat.label(acting));
  auto reps = lat.left_coset_reps(k, acting);
  std::vector<int> coset_of(g.order(), -1);
  for (std::size_t i = 0; i < reps.size(); ++i)
    for_each_bit(lat.mask(k), [&](int y) { coset_of[g.mul(reps[i], y)] = static_cast<int>(i); });
  int n = static_cast<int>(reps.size());
  std::vector<int> images(static_cast<std::size_t>(g.order()) * n, -1);
  for_each_bit(lat.mask(acting), [&](int h) {
    for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(h) * n + i] = coset_of[g.mul(h, reps[i])];
  });
  return GSet(std::move(lattice), acting, n, false, std::move(images));
}

GSet GSet::trivial(LatticePtr lattice, SubgroupId acting, int size, bool based) {
  if (based && size == 0) throw InputError("a based G-set needs its basepoint");
  const SubgroupLattice& lat = *lattice;
  std::vector<int> images(static_cast<std::size_t>(lat.group().order()) * size, -1);
  for_each_bit(lat.mask(acting), [&](int h) {
    for (int i = 0; i < size; ++i) images[static_cast<std::size_t>(h) * size + i] = i;
  });
  return GSet(std::move(lattice), acting, size, based, std::move(images));
}

Perm GSet::permutation(Element g) const {
  Perm p(size_);
  for (int i = 0; i < size_; ++i) p[i] = act(g, i);
  return p;
}

SubgroupId GSet::stabilizer(int x) const {
  Mask m = 0;
  for_each_bit(lattice_->mask(acting_), [&](int h) {
    if (act(h, x) == x) m |= Mask{1} << h;
  });
  return lattice_->find(m);
}

int OrbitType::size(const SubgroupLattice& lat) const {
  int n = 0;
  for (SubgroupId k : classes) n += lat.index_in(k, acting);
  return n;
}

bool OrbitType::operator<(const OrbitType& o) const {
  if (acting != o.acting) return acting < o.acting;
  return classes < o.classes;
}

std::string OrbitType::to_string(const SubgroupLattice& lat) const {
  if (classes.empty()) return "empty";
  std::string out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i) out += " + ";
    out += lat.label(acting) + "/" + lat.label(classes[i]);
  }
  return out;
}

OrbitDecomposition orbit_decompose(const GSet& x) {
  const SubgroupLattice& lat = x.lattice();
  OrbitDecomposition d;
  d.type.acting = x.acting();
  std::vector<char> seen(x.size(), 0);
  for (int p = 0; p < x.size(); ++p) {
    if (seen[p]) continue;
    Orbit o;
    for_each_bit(lat.mask(x.acting()), [&](int h) {
      int q = x.act(h, p);
      if (!seen[q]) {
        seen[q] = 1;
        o.points.push_back(q);
      }
    });
    std::sort(o.points.begin(), o.points.end());
    o.representative = p;
    o.stabilizer = x.stabilizer(p);
    o.basepoint = x.based() && p == 0;
    if (!o.basepoint) d.type.classes.push_back(lat.canonical_conjugate(o.stabilizer, x.acting()));
    d.orbits.push_back(std::move(o));
  }
  std::sort(d.type.classes.begin(), d.type.classes.end());
  return d;
}

OrbitType orbit_type(const GSet& x) { return orbit_decompose(x).type; }

Family isotropy(const GSet& x) {
  Bitset b(x.lattice().size());
  for (int p = 0; p < x.size(); ++p) b[x.stabilizer(p)] = true;
  return Family(x.lattice_ptr(), x.acting(), std::move(b));
}

GSet restrict(const GSet& x, SubgroupId h) {
  const SubgroupLattice& lat = x.lattice();
  if (!lat.contains(h, x.acting())) throw InputError(lat.label(h) + " is not a subgroup of " + lat.label(x.acting()));
  std::vector<int> images = blank(x, x.size());
  for_each_bit(lat.mask(h), [&](int a) {
    for (int p = 0; p < x.size(); ++p) images[static_cast<std::size_t>(a) * x.size() + p] = x.act(a, p);
  });
  return GSetBuilder::build(x.lattice_ptr(), h, x.size(), x.based(), std::move(images));
}

GSet induce(const GSet& x, SubgroupId to) {
  const SubgroupLattice& lat = x.lattice();
  const Group& g = lat.group();
  if (x.based()) throw BasednessMismatch("induce takes unbased H-sets");
  if (!lat.contains(x.acting(), to)) throw InputError("induction target does not contain the acting subgroup");
  auto reps = lat.left_coset_reps(x.acting(), to);
  std::vector<int> coset_of(g.order(), -1);
  for (std::size_t i = 0; i < reps.size(); ++i)
    for_each_bit(lat.mask(x.acting()), [&](int y) { coset_of[g.mul(reps[i], y)] = static_cast<int>(i); });
  const int m = x.size();
  const int n = static_cast<int>(reps.size()) * m;
  std::vector<int> images = blank(x, n);
  for_each_bit(lat.mask(to), [&](int a) {
    for (std::size_t i = 0; i < reps.size(); ++i) {
      Element ar = g.mul(a, reps[i]);
      int j = coset_of[ar];
      Element h = g.mul(g.inv(reps[j]), ar);
      for (int p = 0; p < m; ++p)
        images[static_cast<std::size_t>(a) * n + i * m + p] = j * m + x.act(h, p);
    }
  });
  return GSetBuilder::build(x.lattice_ptr(), to, n, false, std::move(images));
}

GSet coinduce(const GSet& x, SubgroupId to) {
  const SubgroupLattice& lat = x.lattice();
  const Group& g = lat.group();
  SubgroupId h = x.acting();
  if (!lat.contains(h, to)) throw InputError("coinduction target does not contain the acting subgroup");
  // Right cosets Hs with minimal representatives.
  std::vector<Element> reps;
  std::vector<int> coset_of(g.order(), -1);
  std::vector<Element> h_part(g.order(), -1);  // element = h_part * reps[coset]
  for_each_bit(lat.mask(to), [&](int s) {
    if (coset_of[s] >= 0) return;
    int j = static_cast<int>(reps.size());
    reps.push_back(s);
    for_each_bit(lat.mask(h), [&](int y) {
      Element e = g.mul(y, s);
      coset_of[e] = j;
      h_part[e] = y;
    });
  });
  const int m = static_cast<int>(reps.size());
  const std::uint64_t base = x.size();
  std::uint64_t total = 1;
  for (int j = 0; j < m; ++j) {
    total *= base;
    if (total > kMaxPoints) throw SizeBoundExceeded("coinduced set too large");
  }
  const int n = static_cast<int>(total);
  std::vector<int> images = blank(x, n);
  std::vector<int> digits(m), out(m);
  for_each_bit(lat.mask(to), [&](int a) {
    for (int f = 0; f < n; ++f) {
      int v = f;
      for (int j = m - 1; j >= 0; --j) {
        digits[j] = v % static_cast<int>(base);
        v /= static_cast<int>(base);
      }
      int code = 0;
      for (int j = 0; j < m; ++j) {
        Element sa = g.mul(reps[j], a);
        int k = coset_of[sa];
        code = code * static_cast<int>(base) + x.act(h_part[sa], digits[k]);
      }
      images[static_cast<std::size_t>(a) * n + f] = code;
    }
  });
  return GSetBuilder::build(x.lattice_ptr(), to, n, x.based(), std::move(images));
}

GSet coproduct(const GSet& x, const GSet& y) {
  require_compatible(x, y);
  const int n = x.size() + y.size();
  std::vector<int> images = blank(x, n);
  for_each_bit(x.lattice().mask(x.acting()), [&](int a) {
    auto* row = &images[static_cast<std::size_t>(a) * n];
    for (int p = 0; p < x.size(); ++p) row[p] = x.act(a, p);
    for (int p = 0; p < y.size(); ++p) row[x.size() + p] = x.size() + y.act(a, p);
  });
  return GSetBuilder::build(x.lattice_ptr(), x.acting(), n, x.based(), std::move(images));
}

GSet product(const GSet& x, const GSet& y) {
  require_compatible(x, y);
  if (static_cast<std::uint64_t>(x.size()) * y.size() > kMaxPoints) throw SizeBoundExceeded("product too large");
  const int n = x.size() * y.size();
  std::vector<int> images = blank(x, n);
  for_each_bit(x.lattice().mask(x.acting()), [&](int a) {
    auto* row = &images[static_cast<std::size_t>(a) * n];
    for (int i = 0; i < x.size(); ++i)
      for (int j = 0; j < y.size(); ++j) row[i * y.size() + j] = x.act(a, i) * y.size() + y.act(a, j);
  });
  return GSetBuilder::build(x.lattice_ptr(), x.acting(), n, x.based() && y.based(), std::move(images));
}

GSet smash(const GSet& x, const GSet& y) {
  require_compatible(x, y);
  if (!x.based() || !y.based()) throw BasednessMismatch("smash product needs based inputs");
  const int a = x.size() - 1, b = y.size() - 1;
  const int n = a * b + 1;
  std::vector<int> images = blank(x, n);
  for_each_bit(x.lattice().mask(x.acting()), [&](int g) {
    auto* row = &images[static_cast<std::size_t>(g) * n];
    row[0] = 0;
    for (int i = 1; i <= a; ++i)
      for (int j = 1; j <= b; ++j) row[1 + (i - 1) * b + (j - 1)] = 1 + (x.act(g, i) - 1) * b + (y.act(g, j) - 1);
  });
  return GSetBuilder::build(x.lattice_ptr(), x.acting(), n, true, std::move(images));
}

GSet wedge(const GSet& x, const GSet& y) {
  require_compatible(x, y);
  if (!x.based() || !y.based()) throw BasednessMismatch("wedge needs based inputs");
  const int n = x.size() + y.size() - 1;
  std::vector<int> images = blank(x, n);
  for_each_bit(x.lattice().mask(x.acting()), [&](int g) {
    auto* row = &images[static_cast<std::size_t>(g) * n];
    for (int p = 0; p < x.size(); ++p) row[p] = x.act(g, p);
    for (int p = 1; p < y.size(); ++p) row[x.size() - 1 + p] = x.size() - 1 + y.act(g, p);
  });
  return GSetBuilder::build(x.lattice_ptr(), x.acting(), n, true, std::move(images));
}

GSet add_basepoint(const GSet& x) {
  if (x.based()) throw BasednessMismatch("set is already based");
  const int n = x.size() + 1;
  std::vector<int> images = blank(x, n);
  for_each_bit(x.lattice().mask(x.acting()), [&](int g) {
    auto* row = &images[static_cast<std::size_t>(g) * n];
    row[0] = 0;
    for (int p = 0; p < x.size(); ++p) row[p + 1] = x.act(g, p) + 1;
  });
  return GSetBuilder::build(x.lattice_ptr(), x.acting(), n, true, std::move(images));
}

GSet remove_basepoint(const GSet& x) {
  if (!x.based()) throw BasednessMismatch("set is not based");
  const int n = x.size() - 1;
  std::vector<int> images = blank(x, n);
  for_each_bit(x.lattice().mask(x.acting()), [&](int g) {
    for (int p = 0; p < n; ++p) images[static_cast<std::size_t>(g) * n + p] = x.act(g, p + 1) - 1;
  });
  return GSetBuilder::build(x.lattice_ptr(), x.acting(), n, false, std::move(images));
}

GSet conjugate_set(const GSet& x, Element a) {
  const SubgroupLattice& lat = x.lattice();
  const Group& g = lat.group();
  SubgroupId target = lat.conjugate(x.acting(), a);
  std::vector<int> images = blank(x, x.size());
  for_each_bit(lat.mask(target), [&](int gp) {
    Element h = g.mul(g.mul(g.inv(a), gp), a);
    for (int p = 0; p < x.size(); ++p) images[static_cast<std::size_t>(gp) * x.size() + p] = x.act(h, p);
  });
  return GSetBuilder::build(x.lattice_ptr(), target, x.size(), x.based(), std::move(images));
}

GSet relabel(const GSet& x, const Perm& perm) {
  const int n = x.size();
  if (static_cast<int>(perm.size()) != n) throw InputError("relabeling has the wrong length");
  if (x.based() && n > 0 && perm[0] != 0) throw BasednessMismatch("relabeling must fix the basepoint");
  std::vector<int> images = blank(x, n);
  for_each_bit(x.lattice().mask(x.acting()), [&](int g) {
    for (int p = 0; p < n; ++p) images[static_cast<std::size_t>(g) * n + perm[p]] = perm[x.act(g, p)];
  });
  return GSetBuilder::build(x.lattice_ptr(), x.acting(), n, x.based(), std::move(images));
}

GSet sub_gset(const GSet& x, const std::vector<int>& points) {
  std::vector<int> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<int> index(x.size(), -1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i] < 0 || pts[i] >= x.size()) throw InputError("point out of range");
    index[pts[i]] = static_cast<int>(i);
  }
  const int n = static_cast<int>(pts.size());
  std::vector<int> images = blank(x, n);
  for_each_bit(x.lattice().mask(x.acting()), [&](int g) {
    for (int i = 0; i < n; ++i) {
      int q = index[x.act(g, pts[i])];
      if (q < 0) throw InputError("points do not form a sub-G-set");
      images[static_cast<std::size_t>(g) * n + i] = q;
    }
  });
  bool based = x.based() && n > 0 && pts[0] == 0;
  return GSetBuilder::build(x.lattice_ptr(), x.acting(), n, based, std::move(images));
}

IsoResult iso_test(const GSet& x, const GSet& y) {
  require_compatible(x, y);
  if (x.based() != y.based() || x.size() != y.size()) return {false, {}};
  auto dx = orbit_decompose(x);
  auto dy = orbit_decompose(y);
  if (dx.type != dy.type) return {false, {}};
  const SubgroupLattice& lat = x.lattice();
  const Group& g = lat.group();
  SubgroupId h = x.acting();
  std::vector<int> witness(x.size(), -1);
  std::vector<char> used(dy.orbits.size(), 0);
  for (const auto& ox : dx.orbits) {
    SubgroupId cls = lat.canonical_conjugate(ox.stabilizer, h);
    for (std::size_t j = 0; j < dy.orbits.size(); ++j) {
      const auto& oy = dy.orbits[j];
      if (used[j] || oy.basepoint != ox.basepoint || lat.canonical_conjugate(oy.stabilizer, h) != cls) continue;
      used[j] = 1;
      // b·ry has stabilizer b Ky b⁻¹ = Kx, so h·rx ↦ h·b·ry is well defined.
      Element b = lat.conjugator(oy.stabilizer, ox.stabilizer, h);
      int target = y.act(b, oy.representative);
      for_each_bit(lat.mask(h), [&](int a) { witness[x.act(a, ox.representative)] = y.act(a, target); });
      break;
    }
  }
  (void)g;
  return {true, std::move(witness)};
}

GSet double_coset_decompose(const LatticePtr& lattice, SubgroupId h, SubgroupId k) {
  GSet out = GSet::empty(lattice, h);
  for (const auto& dc : lattice->double_cosets(h, k)) out = coproduct(out, GSet::orbit(lattice, h, dc.intersection));
  return out;
}

GSet from_orbit_type(const LatticePtr& lattice, const OrbitType& type, bool based) {
  GSet out = based ? GSet::point_based(lattice, type.acting) : GSet::empty(lattice, type.acting);
  for (SubgroupId k : type.classes) out = coproduct(out, GSet::orbit(lattice, type.acting, k));
  return out;
}

std::vector<OrbitType> orbit_types_up_to(const SubgroupLattice& lat, SubgroupId h, int bound) {
  std::vector<SubgroupId> reps;
  for (SubgroupId k : lat.subgroups_of(h))
    if (lat.canonical_conjugate(k, h) == k) reps.push_back(k);
  std::vector<OrbitType> out;
  OrbitType cur{h, {}};
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int room) {
    out.push_back(cur);
    for (std::size_t i = from; i < reps.size(); ++i) {
      int idx = lat.index_in(reps[i], h);
      if (idx > room) continue;
      cur.classes.push_back(reps[i]);
      rec(i, room - idx);
      cur.classes.pop_back();
    }
  };
  rec(0, bound);
  std::sort(out.begin(), out.end(), [&](const OrbitType& a, const OrbitType& b) {
    int sa = a.size(lat), sb = b.size(lat);
    if (sa != sb) return sa < sb;
    return a.classes < b.classes;
  });
  return out;
}

bool is_equivariant(const GSet& x, const GSet& y, const std::vector<int>& map) {
  require_compatible(x, y);
  if (static_cast<int>(map.size()) != x.size()) return false;
  for (int v : map)
    if (v < 0 || v >= y.size()) return false;
  if (x.based() && y.based() && map[0] != 0) return false;
  bool ok = true;
  for_each_bit(x.lattice().mask(x.acting()), [&](int g) {
    for (int p = 0; p < x.size() && ok; ++p) ok = map[x.act(g, p)] == y.act(g, map[p]);
  });
  return ok;
}

std::uint64_t hom_count(const GSet& x, const GSet& y) {
  require_compatible(x, y);
  if (x.based() != y.based()) throw BasednessMismatch("hom_count needs matching basedness");
  const SubgroupLattice& lat = x.lattice();
  std::uint64_t total = 1;
  for (const auto& o : orbit_decompose(x).orbits) {
    if (o.basepoint) continue;
    std::uint64_t fixed = 0;
    for (int q = 0; q < y.size(); ++q) {
      bool f = true;
      for_each_bit(lat.mask(o.stabilizer), [&](int k) { f = f && y.act(k, q) == q; });
      fixed += f;
    }
    total *= fixed;
  }
  return total;
}

std::string describe(const GSet& x) {
  std::ostringstream os;
  os << (x.based() ? "based " : "") << x.lattice().label(x.acting()) << "-set of size " << x.size() << ": "
     << orbit_type(x).to_string(x.lattice());
  return os.str();
}

}  // namespace transferkit
