#include "transferkit/indexing.hpp"

#include <algorithm>

#include "transferkit/error.hpp"

namespace transferkit {

using nlohmann::json;

bool IndexingSystem::admits_type(const OrbitType& type) const {
  for (SubgroupId k : type.classes)
    if (!source_.relates(k, type.acting)) return false;
  return true;
}

Admission admits(const GSet& t, const IndexingSystem& ix) {
  if (t.lattice_ptr() != ix.lattice_ptr()) throw InputError("H-set and indexing system use different groups");
  Admission a{true, {}};
  for (const auto& o : orbit_decompose(t).orbits) {
    if (o.basepoint) continue;
    bool ok = ix.source().relates(o.stabilizer, t.acting());
    a.orbits.push_back({o.representative, o.stabilizer, ok});
    a.admissible = a.admissible && ok;
  }
  return a;
}

int default_size_bound(const SubgroupLattice& lat) { return std::max(6, lat.group().order()); }

std::vector<OrbitType> level(const IndexingSystem& ix, SubgroupId h, int bound) {
  std::vector<OrbitType> out;
  for (auto& t : orbit_types_up_to(ix.lattice(), h, bound))
    if (ix.admits_type(t)) out.push_back(std::move(t));
  return out;
}

Membership membership_of(const IndexingSystem& ix) {
  return [ix](const GSet& t) { return admits(t, ix).admissible; };
}

Membership corrupted_membership(const IndexingSystem& ix) {
  const auto& lat = ix.lattice();
  auto pairs = ix.source().pairs();
  OrbitType dropped;
  if (pairs.empty()) {
    dropped = {lat.top(), {lat.top()}};
  } else {
    dropped = {pairs.front().second, {lat.canonical_conjugate(pairs.front().first, pairs.front().second)}};
  }
  return [ix, dropped](const GSet& t) {
    if (!t.based() && orbit_type(t) == dropped) return false;
    return admits(t, ix).admissible;
  };
}

bool AxiomReport::all_pass() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.pass; });
}

bool AxiomReport::passes(const std::string& axiom) const {
  for (const auto& r : results)
    if (r.axiom == axiom) return r.pass;
  return false;
}

json AxiomReport::to_json() const {
  json out = json::array();
  for (const auto& r : results)
    out.push_back({{"axiom", r.axiom}, {"status", r.pass ? "pass" : "fail"}, {"checked", r.checked}, {"witness", r.witness}});
  return out;
}

AxiomReport verify_axioms(const LatticePtr& lattice, const Membership& member, int bound) {
  const SubgroupLattice& lat = *lattice;
  const Group& g = lat.group();
  const int s = lat.size();

  std::vector<std::vector<GSet>> all(s), admitted(s);
  std::vector<std::vector<OrbitType>> admitted_types(s);
  for (int h = 0; h < s; ++h)
    for (const auto& t : orbit_types_up_to(lat, h, bound)) {
      GSet x = from_orbit_type(lattice, t);
      if (member(x)) {
        admitted[h].push_back(x);
        admitted_types[h].push_back(t);
      }
      all[h].push_back(std::move(x));
    }

  AxiomReport rep;
  auto describe_set = [&](const GSet& x) { return orbit_type(x).to_string(lat); };
  auto fail = [&](AxiomResult& r, json w) {
    if (r.pass) {
      r.pass = false;
      r.witness = std::move(w);
    }
  };

  AxiomResult i1;
  i1.axiom = "I1";
  for (int h = 0; h < s; ++h)
    for (int n = 0; n <= bound; ++n) {
      ++i1.checked;
      if (!member(GSet::trivial(lattice, h, n)))
        fail(i1, {{"H", lat.label(h)}, {"rejected", "trivial set of size " + std::to_string(n)}});
    }
  rep.results.push_back(i1);

  AxiomResult i2;
  i2.axiom = "I2";
  for (int h = 0; h < s; ++h)
    for (const auto& x : all[h]) {
      Perm rev(x.size());
      for (int p = 0; p < x.size(); ++p) rev[p] = x.size() - 1 - p;
      GSet y = relabel(x, rev);
      ++i2.checked;
      if (member(x) != member(y))
        fail(i2, {{"H", lat.label(h)}, {"T", describe_set(x)}, {"relabeling", "reversal"}});
    }
  rep.results.push_back(i2);

  AxiomResult i3;
  i3.axiom = "I3";
  for (int h = 0; h < s; ++h)
    for (const auto& x : admitted[h])
      for (SubgroupId k : lat.subgroups_of(h)) {
        if (k == h) continue;
        ++i3.checked;
        if (!member(restrict(x, k)))
          fail(i3, {{"H", lat.label(h)}, {"K", lat.label(k)}, {"T", describe_set(x)}});
      }
  rep.results.push_back(i3);

  AxiomResult i4;
  i4.axiom = "I4";
  for (int h = 0; h < s; ++h)
    for (const auto& x : admitted[h])
      for (Element a = 0; a < g.order(); ++a) {
        ++i4.checked;
        if (!member(conjugate_set(x, a)))
          fail(i4, {{"H", lat.label(h)}, {"a", g.element_label(a)}, {"T", describe_set(x)}});
      }
  rep.results.push_back(i4);

  AxiomResult i5;
  i5.axiom = "I5";
  for (int h = 0; h < s; ++h)
    for (const auto& x : admitted[h]) {
      auto orbits = orbit_decompose(x).orbits;
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << orbits.size()); ++m) {
        std::vector<int> pts;
        for (std::size_t i = 0; i < orbits.size(); ++i)
          if (m >> i & 1) pts.insert(pts.end(), orbits[i].points.begin(), orbits[i].points.end());
        GSet sub = sub_gset(x, pts);
        ++i5.checked;
        if (!member(sub))
          fail(i5, {{"H", lat.label(h)}, {"T", describe_set(x)}, {"S", describe_set(sub)}});
      }
    }
  rep.results.push_back(i5);

  AxiomResult i6;
  i6.axiom = "I6";
  for (int h = 0; h < s; ++h)
    for (const auto& x : admitted[h])
      for (const auto& y : admitted[h]) {
        ++i6.checked;
        if (!member(coproduct(x, y)))
          fail(i6, {{"H", lat.label(h)}, {"S", describe_set(x)}, {"T", describe_set(y)}});
      }
  rep.results.push_back(i6);

  AxiomResult i7;
  i7.axiom = "I7";
  for (int h = 0; h < s; ++h)
    for (SubgroupId k : lat.subgroups_of(h)) {
      if (!member(GSet::orbit(lattice, h, k))) continue;
      for (const auto& t : admitted[k]) {
        ++i7.checked;
        if (!member(induce(t, h)))
          fail(i7, {{"H", lat.label(h)}, {"K", lat.label(k)}, {"T", describe_set(t)}});
      }
    }
  rep.results.push_back(i7);

  AxiomResult i8;
  i8.axiom = "I8";
  for (int h = 0; h < s; ++h)
    for (std::size_t i = 0; i < admitted[h].size(); ++i)
      for (std::size_t j = i; j < admitted[h].size(); ++j) {
        ++i8.checked;
        if (!member(product(admitted[h][i], admitted[h][j])))
          fail(i8, {{"H", lat.label(h)}, {"S", describe_set(admitted[h][i])}, {"T", describe_set(admitted[h][j])}});
      }
  rep.results.push_back(i8);
  return rep;
}

AxiomReport verify_axioms(const IndexingSystem& ix, int bound) {
  return verify_axioms(ix.lattice_ptr(), membership_of(ix), bound);
}

RestrictionCheck restriction_identity_check(const IndexingSystem& ix, SubgroupId h, int bound, Strictness mode) {
  const auto& lat = ix.lattice();
  RestrictionCheck rc;
  PhiResult f = phi(ix.source(), mode);
  rc.source_disklike = f.disklike;
  Family fh = restrict_family(f.family, h);
  for (const auto& t : orbit_types_up_to(lat, h, bound)) {
    bool lhs = ix.admits_type(t);
    bool rhs = std::all_of(t.classes.begin(), t.classes.end(), [&](SubgroupId k) { return fh.contains(k); });
    if (lhs != rhs) {
      rc.agree = false;
      rc.witness = t;
      rc.admits_side = lhs;
      break;
    }
  }
  return rc;
}

GammaObject make_gamma_object(const GSet& based_set, const IndexingSystem& ix) {
  const auto& lat = ix.lattice();
  if (!based_set.based()) throw InputError("Γ objects are based G-sets");
  if (based_set.acting() != lat.top()) throw InputError("Γ objects are G-sets for the whole group");
  Admission a = admits(based_set, ix);
  if (!a.admissible) throw InputError("G-set is not admissible: " + describe(based_set));
  return {based_set, std::move(a.orbits)};
}

std::vector<int> decode_based_map(int code, int source_size, int target_size) {
  std::vector<int> f(source_size, 0);
  for (int x = source_size - 1; x >= 1; --x) {
    f[x] = code % target_size;
    code /= target_size;
  }
  return f;
}

int encode_based_map(const std::vector<int>& f, int target_size) {
  int code = 0;
  for (std::size_t x = 1; x < f.size(); ++x) code = code * target_size + f[x];
  return code;
}

GSet gamma_hom(const GammaObject& s, const GammaObject& t) {
  const GSet& a = s.gset;
  const GSet& b = t.gset;
  if (a.lattice_ptr() != b.lattice_ptr()) throw InputError("Γ objects over different groups");
  const auto& lat = a.lattice();
  const Group& g = lat.group();
  std::uint64_t count = 1;
  for (int i = 1; i < a.size(); ++i) {
    count *= b.size();
    if (count > (1u << 20)) throw SizeBoundExceeded("hom set too large");
  }
  const int n = static_cast<int>(count);
  std::vector<int> images(static_cast<std::size_t>(g.order()) * n, -1);
  for (Element x = 0; x < g.order(); ++x) {
    Element xi = g.inv(x);
    for (int code = 0; code < n; ++code) {
      auto f = decode_based_map(code, a.size(), b.size());
      std::vector<int> gf(a.size(), 0);
      for (int p = 1; p < a.size(); ++p) gf[p] = b.act(x, f[a.act(xi, p)]);
      images[static_cast<std::size_t>(x) * n + code] = encode_based_map(gf, b.size());
    }
  }
  return make_gset(a.lattice_ptr(), lat.top(), n, true, std::move(images));
}

Embedding embed_via_disklike(const GSet& t, const IndexingSystem& ix) {
  const auto& lat = ix.lattice();
  const auto& lp = ix.lattice_ptr();
  const SubgroupId top = lat.top();
  const SubgroupId h = t.acting();
  if (!admits(t, ix).admissible) throw InputError("H-set is not admissible: " + describe(t));
  auto sources = ix.source().top_level_sources();  // ascending = by cardinality then index
  Embedding e{t.based() ? GSet::point_based(lp, top) : GSet::empty(lp, top), std::vector<int>(t.size(), -1), {}};
  if (t.based()) e.map[0] = 0;
  for (const auto& o : orbit_decompose(t).orbits) {
    if (o.basepoint) continue;
    SubgroupId chosen = -1;
    for (SubgroupId kp : sources)
      if (lat.meet(kp, h) == o.stabilizer) {
        chosen = kp;
        break;
      }
    if (chosen < 0)
      throw NoWitness("no K' -> G with K' ∩ " + lat.label(h) + " = " + lat.label(o.stabilizer) +
                      "; the source is not disk-like");
    GSet orb = GSet::orbit(lp, top, chosen);
    // The coset eK' is the point whose representative lies in K'.
    auto reps = lat.left_coset_reps(chosen, top);
    int base_point = -1;
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (lat.has_element(chosen, reps[i])) base_point = static_cast<int>(i);
    const int offset = e.target.size();
    e.target = coproduct(e.target, orb);
    for_each_bit(lat.mask(h), [&](int a) { e.map[t.act(a, o.representative)] = offset + orb.act(a, base_point); });
    e.witnesses.push_back(chosen);
  }
  return e;
}

}  // namespace transferkit
