#include <algorithm>
#include <set>

#include "doctest.h"
#include "transferkit/error.hpp"
#include "transferkit/family.hpp"
#include "transferkit/gset.hpp"

using namespace transferkit;

namespace {

SubgroupId by_label(const SubgroupLattice& lat, const std::string& label) {
  for (SubgroupId h = 0; h < lat.size(); ++h)
    if (lat.label(h) == label) return h;
  FAIL("no subgroup labelled " << label);
  return -1;
}

SubgroupId by_order(const SubgroupLattice& lat, int order) {
  for (SubgroupId h = 0; h < lat.size(); ++h)
    if (lat.order_of(h) == order) return h;
  return -1;
}

std::vector<TransferSystem> disklike_systems(const LatticePtr& lat) {
  std::vector<TransferSystem> out;
  for (auto& t : enumerate_all(lat))
    if (is_disklike(t)) out.push_back(t);
  return out;
}

}  // namespace

TEST_SUITE("family") {
  TEST_CASE("generated versus transfer-like on the symmetric group") {
    auto s3 = lattice_of("S_3");
    SubgroupId t12 = by_label(*s3, "<(1 2)>");
    Family f = generated_family(s3, {t12});
    Family t = transfer_like_family(s3, {t12});
    CHECK(f.size() == 4);
    CHECK(t.size() == 5);
    CHECK(f.contains(s3->top()));
    CHECK_FALSE(f.contains(0));
    CHECK(t.contains(0));
    CHECK_FALSE(t.contains(by_order(*s3, 3)));
    CHECK(f.subset_of(t));
    TransferLikeResult r = is_transfer_like(f);
    CHECK_FALSE(r.transfer_like);
    CHECK(r.excess == std::vector<SubgroupId>{0});
    CHECK(is_transfer_like(t).transfer_like);
  }

  TEST_CASE("trivial generating sets") {
    for (const char* name : {"C_4", "S_3", "D_4"}) {
      auto lat = lattice_of(name);
      CHECK(generated_family(lat, {}) == Family::based_trivial(lat, lat->top()));
      CHECK(transfer_like_family(lat, {}) == Family::based_trivial(lat, lat->top()));
      std::vector<SubgroupId> all(lat->size());
      for (int i = 0; i < lat->size(); ++i) all[i] = i;
      CHECK(generated_family(lat, all) == Family::complete(lat, lat->top()));
      CHECK(is_transfer_like(Family::complete(lat, lat->top())).transfer_like);
      CHECK(is_transfer_like(Family::based_trivial(lat, lat->top())).transfer_like);
      for (SubgroupId k = 0; k < lat->size(); ++k)
        CHECK(generated_family(lat, {k}).subset_of(transfer_like_family(lat, {k})));
    }
    auto c4 = lattice_of("C_4");
    CHECK(generated_family(c4, {1}) == transfer_like_family(c4, {1}));
    CHECK(generated_family(c4, {1}).members() == std::vector<SubgroupId>{1, 2});
  }

  TEST_CASE("families validate conjugation closure") {
    auto s3 = lattice_of("S_3");
    SubgroupId t12 = by_label(*s3, "<(1 2)>");
    CHECK_THROWS_AS(Family::from_list(s3, s3->top(), {t12, s3->top()}), InputError);
    CHECK(Family::closure_of(s3, s3->top(), {t12}).size() == 3);
  }

  TEST_CASE("phi on the cyclic group of order p^2") {
    auto c4 = lattice_of("C_4");
    auto disk = disklike_systems(c4);
    REQUIRE(disk.size() == 4);
    std::vector<std::vector<SubgroupId>> images;
    for (auto& t : disk) images.push_back(phi(t).family.members());
    std::sort(images.begin(), images.end());
    // The four based families {G}, {e,G}, {C_2,G}, {e,C_2,G}.
    std::vector<std::vector<SubgroupId>> expect{{0, 1, 2}, {0, 2}, {1, 2}, {2}};
    CHECK(images == expect);
    CHECK(all_based_families(c4).size() == 4);
    auto e_g = Family::from_list(c4, 2, {0, 2}), c2_g = Family::from_list(c4, 2, {1, 2});
    CHECK(family_join(e_g, c2_g) == Family::complete(c4, 2));
    CHECK(family_meet(e_g, c2_g) == Family::based_trivial(c4, 2));
    CHECK(family_meet(e_g, Family::complete(c4, 2)) == e_g);
    CHECK(family_join(e_g, Family::based_trivial(c4, 2)) == e_g);
  }

  TEST_CASE("phi extremes and strict mode") {
    auto c4 = lattice_of("C_4");
    CHECK(phi(TransferSystem::trivial(c4)).family == Family::based_trivial(c4, 2));
    CHECK(phi(TransferSystem::complete(c4)).family == Family::complete(c4, 2));
    auto bad = TransferSystem::from_pairs(c4, {{0, 1}});
    CHECK_THROWS_AS(phi(bad), NotDiskLike);
    PhiResult p = phi(bad, Strictness::Permissive);
    CHECK_FALSE(p.disklike);
    CHECK(p.family == Family::based_trivial(c4, 2));
    // Φ does not separate non-disk-like systems: bad and trivial collide.
    CHECK(phi(TransferSystem::trivial(c4), Strictness::Permissive).family == p.family);

    auto c6 = lattice_of("C_6");
    SubgroupId c3 = by_order(*c6, 3);
    auto t = rubin_complete(c6, {{c3, c6->top()}});
    CHECK(phi(t).family.members() == std::vector<SubgroupId>{c3, c6->top()});
  }

  TEST_CASE("phi is an order embedding on disk-like systems") {
    for (const char* name : {"C_4", "C_8", "C_6", "S_3", "D_4", "C_12", "A_4"}) {
      auto lat = lattice_of(name);
      auto disk = disklike_systems(lat);
      std::set<std::vector<SubgroupId>> seen;
      for (auto& s : disk) {
        Family fs = phi(s).family;
        CHECK(seen.insert(fs.members()).second);
        CHECK(is_transfer_like(fs).transfer_like);
        CHECK(transfer_like_family(lat, fs.members()) == fs);
        for (auto& t : disk) CHECK(s.subset_of(t) == fs.subset_of(phi(t).family));
      }
      // The image is exactly the set of transfer-like based families.
      std::size_t tl = 0;
      for (auto& f : all_based_families(lat)) tl += is_transfer_like(f).transfer_like;
      CHECK(tl == disk.size());
    }
  }

  TEST_CASE("phi and the lattice operations") {
    // On Tr^d the join is the join in Tr and the meet is the disk-like core
    // of the intersection. Transfer-like families are closed under
    // intersection, so meets go to intersections, but a union of
    // transfer-like families need not be transfer-like: Φ sends joins to the
    // transfer-like closure of the union.
    for (const char* name : {"C_4", "C_8", "C_6", "S_3", "D_4", "C_12"}) {
      auto lat = lattice_of(name);
      auto disk = disklike_systems(lat);
      for (auto& s : disk)
        for (auto& t : disk) {
          Family fs = phi(s).family, ft = phi(t).family;
          TransferSystem j = join(s, t);
          REQUIRE(is_disklike(j));
          CHECK(phi(j).family == transfer_like_family(lat, family_join(fs, ft).members()));
          TransferSystem m = disklike_core(meet(s, t));
          CHECK(phi(m).family == family_meet(fs, ft));
          CHECK(is_transfer_like(family_meet(fs, ft)).transfer_like);
          // Top-level sources of the plain intersection already match.
          CHECK(phi(meet(s, t), Strictness::Permissive).family == family_meet(fs, ft));
        }
    }
  }

  TEST_CASE("union of transfer-like families is not transfer-like on C_6") {
    auto c6 = lattice_of("C_6");
    SubgroupId c2 = by_order(*c6, 2), c3 = by_order(*c6, 3), g = c6->top();
    auto s = rubin_complete(c6, {{c2, g}}), t = rubin_complete(c6, {{c3, g}});
    REQUIRE(is_disklike(s));
    REQUIRE(is_disklike(t));
    Family u = family_join(phi(s).family, phi(t).family);
    CHECK(u.members() == std::vector<SubgroupId>{c2, c3, g});
    CHECK_FALSE(is_transfer_like(u).transfer_like);
    CHECK(is_transfer_like(u).excess == std::vector<SubgroupId>{0});
    CHECK(phi(join(s, t)).family == Family::complete(c6, g));
  }

  TEST_CASE("intersecting disk-like systems can leave Tr^d") {
    auto c6 = lattice_of("C_6");
    SubgroupId c2 = by_order(*c6, 2), c3 = by_order(*c6, 3), g = c6->top();
    auto s = rubin_complete(c6, {{0, g}}), t = rubin_complete(c6, {{c3, g}});
    REQUIRE(is_disklike(s));
    REQUIRE(is_disklike(t));
    TransferSystem m = meet(s, t);
    CHECK(m.pairs() == std::vector<Pair>{{0, c2}});
    CHECK_FALSE(is_disklike(m));
    CHECK(disklike_core(m) == TransferSystem::trivial(c6));
  }

  TEST_CASE("restriction of families") {
    auto s3 = lattice_of("S_3");
    SubgroupId a3 = by_order(*s3, 3);
    Family t = transfer_like_family(s3, {by_label(*s3, "<(1 2)>")});
    Family r = restrict_family(t, a3);
    CHECK(r.ambient() == a3);
    CHECK(r.members() == std::vector<SubgroupId>{0, a3});
    CHECK(restrict_family(Family::complete(s3, s3->top()), a3) == Family::complete(s3, a3));
    for (SubgroupId h = 0; h < s3->size(); ++h)
      CHECK(restrict_family(Family::based_trivial(s3, s3->top()), h) == Family::based_trivial(s3, h));
  }

  TEST_CASE("isotropy of products needs intersection closure") {
    auto s3 = lattice_of("S_3");
    const SubgroupId g = s3->top();
    // Orbits G/K with K in the family; products of orbits cover all pairs of
    // G-sets of size at most six up to the decomposition into orbits.
    auto violates = [&](const Family& f) {
      for (SubgroupId h : f.members())
        for (SubgroupId k : f.members()) {
          GSet x = GSet::orbit(s3, g, h), y = GSet::orbit(s3, g, k);
          if (!isotropy(product(x, y)).subset_of(f)) return true;
        }
      return false;
    };
    int non_tl = 0;
    for (const Family& f : all_based_families(s3)) {
      if (is_transfer_like(f).transfer_like) {
        CHECK_FALSE(violates(f));
      } else {
        ++non_tl;
        CHECK(violates(f));
      }
    }
    CHECK(non_tl == 2);
  }
}
