#include "transferkit/lattice.hpp"

#include <algorithm>

#include "transferkit/bitset.hpp"
#include "transferkit/error.hpp"

namespace transferkit {

namespace {

Mask closure(const Group& g, Mask gens) {
  std::vector<Element> gen_list = bits_of(gens);
  std::vector<Element> elems{g.identity()};
  Mask seen = Mask{1} << g.identity();
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (Element s : gen_list) {
      Element y = g.mul(elems[i], s);
      if (!(seen >> y & 1)) {
        seen |= Mask{1} << y;
        elems.push_back(y);
      }
    }
  return seen;
}

}  // namespace

LatticePtr SubgroupLattice::make(Group g, int order_bound) {
  return make(std::make_shared<const Group>(std::move(g)), order_bound);
}

LatticePtr SubgroupLattice::make(std::shared_ptr<const Group> g, int order_bound) {
  if (order_bound > kMaxGroupOrder) order_bound = kMaxGroupOrder;
  if (g->order() > order_bound)
    throw OrderBoundExceeded("group " + g->name() + " has order " + std::to_string(g->order()) +
                             ", bound is " + std::to_string(order_bound));
  std::shared_ptr<SubgroupLattice> lat(new SubgroupLattice());
  lat->group_ = std::move(g);
  lat->build(order_bound);
  return lat;
}

void SubgroupLattice::build(int /*order_bound*/) {
  const Group& g = *group_;
  const int n = g.order();

  std::vector<Mask> cyclic;
  for (Element a = 0; a < n; ++a) {
    Mask c = closure(g, Mask{1} << a);
    if (std::find(cyclic.begin(), cyclic.end(), c) == cyclic.end()) cyclic.push_back(c);
  }
  // Every subgroup is a join of cyclic subgroups.
  std::vector<Mask> found;
  std::unordered_map<Mask, int> seen;
  for (Mask c : cyclic)
    if (seen.emplace(c, 0).second) found.push_back(c);
  for (std::size_t i = 0; i < found.size(); ++i)
    for (Mask c : cyclic) {
      if ((found[i] & c) == c) continue;
      Mask t = closure(g, found[i] | c);
      if (seen.emplace(t, 0).second) found.push_back(t);
    }

  std::sort(found.begin(), found.end(), [](Mask a, Mask b) {
    int pa = popcount(a), pb = popcount(b);
    if (pa != pb) return pa < pb;
    // Lexicographic on sorted element lists: the first differing element in
    // ascending order decides, and the list holding the smaller one is first.
    Mask diff = a ^ b;
    if (!diff) return false;
    int low = __builtin_ctzll(diff);
    return (a >> low & 1) != 0;
  });
  masks_ = std::move(found);
  const int s = size();
  for (int i = 0; i < s; ++i) index_[masks_[i]] = i;

  leq_.assign(static_cast<std::size_t>(s) * s, 0);
  meet_.assign(static_cast<std::size_t>(s) * s, 0);
  join_.assign(static_cast<std::size_t>(s) * s, 0);
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b) {
      leq_[a * s + b] = (masks_[a] & masks_[b]) == masks_[a];
      meet_[a * s + b] = index_.at(masks_[a] & masks_[b]);
    }
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b) {
      // Smallest listed subgroup containing both; canonical order is a linear
      // extension of containment, so the first hit is the least one.
      for (int c = 0; c < s; ++c)
        if (leq_[a * s + c] && leq_[b * s + c]) {
          join_[a * s + b] = c;
          break;
        }
    }

  conj_.assign(static_cast<std::size_t>(n) * s, 0);
  for (Element a = 0; a < n; ++a)
    for (int h = 0; h < s; ++h) {
      Mask m = 0;
      for_each_bit(masks_[h], [&](int x) { m |= Mask{1} << g.conj(a, x); });
      conj_[a * s + h] = index_.at(m);
    }

  class_of_.assign(s, -1);
  for (int h = 0; h < s; ++h) {
    if (class_of_[h] >= 0) continue;
    int id = static_cast<int>(classes_.size());
    std::vector<SubgroupId> members;
    for (Element a = 0; a < n; ++a) {
      SubgroupId c = conjugate(h, a);
      if (class_of_[c] < 0) {
        class_of_[c] = id;
        members.push_back(c);
      }
    }
    std::sort(members.begin(), members.end());
    classes_.push_back(std::move(members));
  }

  pair_index_.assign(static_cast<std::size_t>(s) * s, -1);
  for (int h = 0; h < s; ++h)
    for (int k = 0; k < h; ++k)
      if (contains(k, h)) {
        pair_index_[k * s + h] = static_cast<int>(pairs_.size());
        pairs_.push_back({k, h});
      }
}

std::vector<Element> SubgroupLattice::elements(SubgroupId h) const { return bits_of(masks_[h]); }

SubgroupId SubgroupLattice::find(Mask m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : it->second;
}

SubgroupId SubgroupLattice::generated(Mask elems) const { return index_.at(closure(*group_, elems)); }

SubgroupId SubgroupLattice::canonical_conjugate(SubgroupId k, SubgroupId by) const {
  SubgroupId best = k;
  for_each_bit(masks_[by], [&](int a) { best = std::min(best, conjugate(k, a)); });
  return best;
}

std::vector<SubgroupId> SubgroupLattice::conjugates_under(SubgroupId k, SubgroupId by) const {
  std::vector<SubgroupId> out;
  for_each_bit(masks_[by], [&](int a) { out.push_back(conjugate(k, a)); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Element SubgroupLattice::conjugator(SubgroupId k, SubgroupId target, SubgroupId by) const {
  Element found = -1;
  for_each_bit(masks_[by], [&](int a) {
    if (found < 0 && conjugate(k, a) == target) found = a;
  });
  return found;
}

std::vector<SubgroupId> SubgroupLattice::subgroups_of(SubgroupId h) const {
  std::vector<SubgroupId> out;
  for (int k = 0; k <= h; ++k)
    if (contains(k, h)) out.push_back(k);
  return out;
}

std::vector<SubgroupId> SubgroupLattice::minimal_overgroups(SubgroupId k, SubgroupId h) const {
  std::vector<SubgroupId> over;
  for (int l = 0; l < size(); ++l)
    if (l != k && contains(k, l) && contains(l, h)) over.push_back(l);
  std::vector<SubgroupId> out;
  for (SubgroupId l : over) {
    bool minimal = true;
    for (SubgroupId m : over)
      if (m != l && contains(m, l)) minimal = false;
    if (minimal) out.push_back(l);
  }
  return out;
}

bool SubgroupLattice::is_normal(SubgroupId k, SubgroupId in) const {
  bool ok = true;
  for_each_bit(masks_[in], [&](int a) { ok = ok && conjugate(k, a) == k; });
  return ok;
}

std::vector<Element> SubgroupLattice::left_coset_reps(SubgroupId k, SubgroupId h) const {
  const Group& g = *group_;
  std::vector<Element> reps;
  Mask covered = 0;
  for_each_bit(masks_[h], [&](int a) {
    if (covered >> a & 1) return;
    reps.push_back(a);
    for_each_bit(masks_[k], [&](int y) { covered |= Mask{1} << g.mul(a, y); });
  });
  return reps;
}

std::vector<DoubleCoset> SubgroupLattice::double_cosets(SubgroupId h, SubgroupId k) const {
  return double_cosets(h, k, top());
}

std::vector<DoubleCoset> SubgroupLattice::double_cosets(SubgroupId h, SubgroupId k, SubgroupId ambient) const {
  const Group& g = *group_;
  std::vector<DoubleCoset> out;
  Mask covered = 0;
  for_each_bit(masks_[ambient], [&](int a) {
    if (covered >> a & 1) return;
    Mask dc = 0;
    for_each_bit(masks_[h], [&](int x) {
      Element xa = g.mul(x, a);
      for_each_bit(masks_[k], [&](int y) { dc |= Mask{1} << g.mul(xa, y); });
    });
    covered |= dc;
    out.push_back({a, popcount(dc), meet(h, conjugate(k, a))});
  });
  return out;
}

std::string SubgroupLattice::label(SubgroupId h) const {
  if (h == 0) return "e";
  if (h == top()) return group_->name();
  const Group& g = *group_;
  std::vector<Element> gens;
  Mask span = Mask{1} << g.identity();
  for_each_bit(masks_[h], [&](int a) {
    if (span >> a & 1) return;
    gens.push_back(a);
    Mask all = 0;
    for (Element x : gens) all |= Mask{1} << x;
    span = closure(g, all);
  });
  std::string out = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ",";
    out += g.element_label(gens[i]);
  }
  return out + ">";
}

LatticePtr lattice_of(std::string_view builtin_name, int order_bound) {
  return SubgroupLattice::make(Group::builtin(builtin_name), order_bound);
}

}  // namespace transferkit
