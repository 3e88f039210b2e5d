#include "transferkit/family.hpp"

#include <algorithm>

#include "transferkit/error.hpp"

namespace transferkit {

Family::Family(LatticePtr lattice, SubgroupId ambient, Bitset members)
    : lattice_(std::move(lattice)), ambient_(ambient), members_(std::move(members)) {
  const auto& lat = *lattice_;
  if (ambient_ < 0 || ambient_ >= lat.size()) throw InputError("family ambient subgroup out of range");
  if (static_cast<int>(members_.size()) != lat.size()) throw InputError("family bit width does not match the lattice");
  for_each_bit(members_, [&](int k) {
    if (!lat.contains(k, ambient_))
      throw InputError("family member " + lat.label(k) + " is not a subgroup of " + lat.label(ambient_));
    for_each_bit(lat.mask(ambient_), [&](int a) {
      SubgroupId c = lat.conjugate(k, a);
      if (!members_[c])
        throw InputError("family is not conjugation closed: " + lat.label(k) + " is in, its conjugate " +
                         lat.label(c) + " is not");
    });
  });
}

Family Family::from_list(LatticePtr lattice, SubgroupId ambient, const std::vector<SubgroupId>& members) {
  Bitset b(lattice->size());
  for (SubgroupId k : members) {
    if (k < 0 || k >= lattice->size()) throw InputError("subgroup index out of range: " + std::to_string(k));
    b[k] = true;
  }
  return Family(std::move(lattice), ambient, std::move(b));
}

Family Family::closure_of(LatticePtr lattice, SubgroupId ambient, const std::vector<SubgroupId>& members) {
  Bitset b(lattice->size());
  for (SubgroupId k : members) {
    if (k < 0 || k >= lattice->size()) throw InputError("subgroup index out of range: " + std::to_string(k));
    for (SubgroupId c : lattice->conjugates_under(k, ambient)) b[c] = true;
  }
  return Family(std::move(lattice), ambient, std::move(b));
}

Family Family::based_trivial(LatticePtr lattice, SubgroupId ambient) {
  Bitset b(lattice->size());
  b[ambient] = true;
  return Family(std::move(lattice), ambient, std::move(b));
}

Family Family::complete(LatticePtr lattice, SubgroupId ambient) {
  Bitset b(lattice->size());
  for (SubgroupId k : lattice->subgroups_of(ambient)) b[k] = true;
  return Family(std::move(lattice), ambient, std::move(b));
}

std::string Family::to_string() const {
  std::string out = "{";
  bool first = true;
  for_each_bit(members_, [&](int k) {
    if (!first) out += ", ";
    out += lattice_->label(k);
    first = false;
  });
  return out + "}";
}

namespace {
void require_same(const Family& a, const Family& b) {
  if (&a.lattice() != &b.lattice() || a.ambient() != b.ambient())
    throw InputError("families live over different groups");
}
}  // namespace

Family family_meet(const Family& a, const Family& b) {
  require_same(a, b);
  return Family(a.lattice_ptr(), a.ambient(), a.bits() & b.bits());
}

Family family_join(const Family& a, const Family& b) {
  require_same(a, b);
  return Family(a.lattice_ptr(), a.ambient(), a.bits() | b.bits());
}

Family generated_family(const LatticePtr& lattice, const std::vector<SubgroupId>& a) {
  std::vector<SubgroupId> m = a;
  m.push_back(lattice->top());
  return Family::closure_of(lattice, lattice->top(), m);
}

Family transfer_like_family(const LatticePtr& lattice, const std::vector<SubgroupId>& a) {
  std::vector<Pair> rel;
  for (SubgroupId k : a) rel.push_back({k, lattice->top()});
  return phi(rubin_complete(lattice, rel), Strictness::Permissive).family;
}

PhiResult phi(const TransferSystem& t, Strictness mode) {
  bool d = is_disklike(t);
  if (!d && mode == Strictness::Strict)
    throw NotDiskLike("Φ is only defined on disk-like systems; got " + pairs_to_string(t.lattice(), t.pairs()));
  return {Family::from_list(t.lattice_ptr(), t.lattice().top(), t.top_level_sources()), d};
}

TransferLikeResult is_transfer_like(const Family& f) {
  const auto& lat = f.lattice();
  if (f.ambient() != lat.top()) throw InputError("transfer-likeness is defined for families of G");
  if (!f.based()) return {false, {}};
  Family image = transfer_like_family(f.lattice_ptr(), f.members());
  TransferLikeResult r{image == f, {}};
  for_each_bit(image.bits() - f.bits(), [&](int k) { r.excess.push_back(k); });
  return r;
}

Family restrict_family(const Family& f, SubgroupId h) {
  const auto& lat = f.lattice();
  if (!lat.contains(h, f.ambient())) throw InputError("restriction target is not a subgroup of the ambient group");
  Bitset b(lat.size());
  for_each_bit(f.bits(), [&](int kp) { b[lat.meet(kp, h)] = true; });
  return Family(f.lattice_ptr(), h, std::move(b));
}

std::vector<Family> all_based_families(const LatticePtr& lattice) {
  const auto& lat = *lattice;
  // A based family is a union of conjugacy classes containing G.
  std::vector<int> classes;
  for (int c = 0; c < static_cast<int>(lat.conjugacy_classes().size()); ++c)
    if (lat.conjugacy_classes()[c].front() != lat.top()) classes.push_back(c);
  if (classes.size() > 24) throw SearchBoundExceeded("too many conjugacy classes to list all families");
  std::vector<Family> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << classes.size()); ++m) {
    Bitset b(lat.size());
    b[lat.top()] = true;
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (m >> i & 1)
        for (SubgroupId k : lat.conjugacy_classes()[classes[i]]) b[k] = true;
    out.emplace_back(lattice, lat.top(), std::move(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace transferkit
