#include <bit>

#include "doctest.h"
#include "oracles.hpp"
#include "transferkit/error.hpp"
#include "transferkit/lattice.hpp"

using namespace transferkit;

namespace {

Element perm_element(const Group& g, const char* cycles, int degree) {
  auto e = g.element_of(parse_cycles(cycles, degree));
  REQUIRE(e.has_value());
  return *e;
}

SubgroupId cyclic_sub(const SubgroupLattice& lat, Element a) { return lat.generated(Mask{1} << a); }

}  // namespace

TEST_SUITE("group") {
  TEST_CASE("builtin orders") {
    CHECK(Group::builtin("C_4").order() == 4);
    CHECK(Group::builtin("S_3").order() == 6);
    CHECK(Group::builtin("S_4").order() == 24);
    CHECK(Group::builtin("A_4").order() == 12);
    CHECK(Group::builtin("D_4").order() == 8);
    CHECK(Group::builtin("trivial").order() == 1);
    CHECK(Group::builtin("C_2xS_3").order() == 12);
    CHECK(Group::builtin("C_2xC_2").is_abelian());
    CHECK_FALSE(Group::builtin("D_3").is_abelian());
    CHECK_THROWS_AS(Group::builtin("Q_8"), InputError);
  }

  TEST_CASE("identity is element zero for permutation groups") {
    Group s3 = Group::builtin("S_3");
    CHECK(s3.identity() == 0);
    CHECK(s3.element_label(0) == "e");
    CHECK(perm_element(s3, "(1 2)", 3) != 0);
  }

  TEST_CASE("table validation reports the first witness") {
    // x*y = x - y mod 3 is not associative: (0-0)-1 = 2 but 0-(0-1) = 1.
    std::vector<std::vector<int>> sub3(3, std::vector<int>(3));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) sub3[a][b] = ((a - b) % 3 + 3) % 3;
    try {
      Group::from_table("magma", sub3);
      FAIL("expected NonAssociative");
    } catch (const NonAssociative& e) {
      CHECK(std::string(e.what()).find("(0,0,1)") != std::string::npos);
    }
    // Constant table: associative, no identity.
    CHECK_THROWS_AS(Group::from_table("zero", {{0, 0}, {0, 0}}), NoIdentity);
    // Monoid {1, 0} under multiplication: 0 has no inverse.
    try {
      Group::from_table("mult", {{0, 1}, {1, 1}});
      FAIL("expected NoInverse");
    } catch (const NoInverse& e) {
      CHECK(std::string(e.what()).find("element 1") != std::string::npos);
    }
    CHECK_THROWS_AS(Group::from_table("ragged", {{0, 1}, {1}}), InputError);
  }

  TEST_CASE("tables round-trip") {
    Group d4 = Group::builtin("D_4");
    Group again = Group::from_table("again", d4.table());
    CHECK(again.hash() == d4.hash());
    for (Element a = 0; a < d4.order(); ++a)
      for (Element b = 0; b < d4.order(); ++b) CHECK(again.mul(a, b) == d4.mul(a, b));
  }

  TEST_CASE("cycle notation") {
    CHECK(cycle_notation(parse_cycles("(1 2)(3 4)", 4)) == "(1 2)(3 4)");
    CHECK(cycle_notation(Perm{0, 1, 2}) == "e");
    CHECK_THROWS_AS(parse_cycles("(1 5)", 3), InputError);
  }

  TEST_CASE("generators generate") {
    for (const std::string& name : Group::builtin_catalog(24)) {
      Group g = Group::builtin(name);
      auto lat = SubgroupLattice::make(g, 24);
      Mask all = 0;
      for (Element a : g.generators()) all |= Mask{1} << a;
      CHECK_MESSAGE(lat->generated(all) == lat->top(), name);
    }
  }
}

TEST_SUITE("lattice") {
  TEST_CASE("subgroup lists agree with the subset scan") {
    for (const std::string& name : Group::builtin_catalog(16)) {
      Group g = Group::builtin(name);
      auto lat = SubgroupLattice::make(g, 16);
      std::vector<Mask> expect = oracle::subgroups_by_scan(g), got;
      for (SubgroupId h = 0; h < lat->size(); ++h) got.push_back(lat->mask(h));
      std::sort(expect.begin(), expect.end());
      std::sort(got.begin(), got.end());
      CHECK_MESSAGE(got == expect, name);
    }
  }

  TEST_CASE("known sizes") {
    CHECK(lattice_of("C_4")->size() == 3);
    CHECK(lattice_of("S_3")->size() == 6);
    CHECK(lattice_of("trivial")->size() == 1);
    CHECK(lattice_of("S_4")->size() == 30);
    CHECK(lattice_of("A_4")->size() == 10);
    CHECK(lattice_of("D_4")->size() == 10);
    CHECK(lattice_of("C_12")->size() == 6);
  }

  TEST_CASE("C_4 is a chain and S_3 has three 2-cycle subgroups") {
    auto c4 = lattice_of("C_4");
    CHECK(c4->contains(0, 1));
    CHECK(c4->contains(1, 2));
    auto s3 = lattice_of("S_3");
    int order2 = 0;
    for (SubgroupId h = 0; h < s3->size(); ++h) order2 += s3->order_of(h) == 2;
    CHECK(order2 == 3);
    CHECK(s3->order_of(4) == 3);
    CHECK(s3->is_normal(4, s3->top()));
  }

  TEST_CASE("canonical order") {
    for (const char* name : {"S_4", "D_6", "C_2xC_2xC_2"}) {
      auto lat = lattice_of(name);
      CHECK(lat->order_of(lat->trivial()) == 1);
      CHECK(lat->order_of(lat->top()) == lat->group().order());
      for (SubgroupId h = 1; h < lat->size(); ++h) CHECK(lat->order_of(h - 1) <= lat->order_of(h));
    }
  }

  TEST_CASE("conjugating <(1 2)> by (1 3) gives <(2 3)>") {
    auto lat = lattice_of("S_3");
    const Group& g = lat->group();
    SubgroupId h12 = cyclic_sub(*lat, perm_element(g, "(1 2)", 3));
    SubgroupId h23 = cyclic_sub(*lat, perm_element(g, "(2 3)", 3));
    CHECK(lat->conjugate(h12, perm_element(g, "(1 3)", 3)) == h23);
    for (SubgroupId h = 0; h < lat->size(); ++h) CHECK(lat->conjugate(h, g.identity()) == h);
    auto c6 = lattice_of("C_6");
    for (SubgroupId h = 0; h < c6->size(); ++h)
      for (Element a = 0; a < 6; ++a) CHECK(c6->conjugate(h, a) == h);
  }

  TEST_CASE("meet and join satisfy the lattice laws") {
    for (const std::string& name : Group::builtin_catalog(24)) {
      auto lat = lattice_of(name, 24);
      int n = lat->size();
      for (SubgroupId a = 0; a < n; ++a)
        for (SubgroupId b = 0; b < n; ++b) {
          CHECK(lat->mask(lat->meet(a, b)) == (lat->mask(a) & lat->mask(b)));
          CHECK(lat->meet(a, lat->join(a, b)) == a);
          CHECK(lat->join(a, lat->meet(a, b)) == a);
          CHECK(lat->contains(a, lat->join(a, b)));
        }
    }
  }

  TEST_CASE("conjugation is a lattice automorphism") {
    for (const std::string& name : Group::builtin_catalog(12)) {
      auto lat = lattice_of(name);
      for (Element x = 0; x < lat->group().order(); ++x)
        for (SubgroupId a = 0; a < lat->size(); ++a)
          for (SubgroupId b = 0; b < lat->size(); ++b)
            CHECK(lat->contains(a, b) == lat->contains(lat->conjugate(a, x), lat->conjugate(b, x)));
    }
  }

  TEST_CASE("double cosets partition G and match the orbit oracle") {
    for (const std::string& name : Group::builtin_catalog(12)) {
      auto lat = lattice_of(name);
      const Group& g = lat->group();
      for (SubgroupId h = 0; h < lat->size(); ++h)
        for (SubgroupId k = 0; k < lat->size(); ++k) {
          auto dcs = lat->double_cosets(h, k);
          auto expect = oracle::double_coset_masks(g, lat->mask(h), lat->mask(k));
          REQUIRE(dcs.size() == expect.size());
          int total = 0;
          for (std::size_t i = 0; i < dcs.size(); ++i) {
            total += dcs[i].size;
            CHECK(__builtin_popcountll(expect[i]) == dcs[i].size);
            CHECK(std::countr_zero(expect[i]) == dcs[i].representative);
            Mask want = lat->mask(h) & lat->mask(lat->conjugate(k, dcs[i].representative));
            CHECK(lat->mask(dcs[i].intersection) == want);
          }
          CHECK(total == g.order());
        }
    }
  }

  TEST_CASE("S_3 double cosets of <(1 2)>") {
    auto lat = lattice_of("S_3");
    SubgroupId h = cyclic_sub(*lat, perm_element(lat->group(), "(1 2)", 3));
    auto dcs = lat->double_cosets(h, h);
    REQUIRE(dcs.size() == 2);
    CHECK(dcs[0].size == 2);
    CHECK(dcs[0].intersection == h);
    CHECK(dcs[1].size == 4);
    CHECK(dcs[1].intersection == lat->trivial());
    CHECK(lat->double_cosets(h, lat->top()).size() == 1);
    CHECK(lat->double_cosets(h, lat->trivial()).size() == 3);
  }

  TEST_CASE("order bound") {
    CHECK_THROWS_AS(SubgroupLattice::make(Group::builtin("C_30"), 24), OrderBoundExceeded);
    CHECK(SubgroupLattice::make(Group::builtin("C_30"), 64)->size() == 8);
  }
}
