#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "transferkit/error.hpp"
#include "transferkit/universe.hpp"

using namespace transferkit;

namespace {

SubgroupId by_order(const SubgroupLattice& lat, int order) {
  for (SubgroupId h = 0; h < lat.size(); ++h)
    if (lat.order_of(h) == order) return h;
  return -1;
}

}  // namespace

TEST_SUITE("universe") {
  TEST_CASE("fixed dimensions") {
    auto c5 = lattice_of("C_5");
    CHECK(fixed_dim(*c5, Irreducible::rotation(1), c5->top()) == 0);
    CHECK(fixed_dim(*c5, Irreducible::rotation(1), 0) == 2);
    CHECK(fixed_dim(*c5, Irreducible::trivial(), c5->top()) == 1);
    auto c4 = lattice_of("C_4");
    CHECK(fixed_dim(*c4, Irreducible::rotation(2), 1) == 2);
    CHECK(fixed_dim(*c4, Irreducible::rotation(2), 2) == 0);
    CHECK(fixed_dim(*c4, Irreducible::sign(), 1) == 1);
    CHECK(fixed_dim(*c4, Irreducible::sign(), 2) == 0);
    CHECK_THROWS_AS(fixed_dim(*c5, Irreducible::sign(), 0), DescriptorMismatch);
    CHECK_THROWS_AS(fixed_dim(*lattice_of("S_3"), Irreducible::rotation(1), 0), DescriptorMismatch);
    CHECK(Irreducible::parse("V(3)") == Irreducible::rotation(3));
    CHECK(Irreducible::parse(Irreducible::sign().label()) == Irreducible::sign());
  }

  TEST_CASE("nontrivial irreducibles of cyclic groups") {
    CHECK(cyclic_nontrivial_irreducibles(2).size() == 1);
    CHECK(cyclic_nontrivial_irreducibles(5).size() == 2);
    CHECK(cyclic_nontrivial_irreducibles(6).size() == 3);
    CHECK(cyclic_nontrivial_irreducibles(12).size() == 6);
  }

  TEST_CASE("realizable stabilizers") {
    auto c5 = lattice_of("C_5");
    const SubgroupId g = c5->top();
    CHECK(realizable_stabilizers(Universe::trivial_universe(c5), g).members() == std::vector<SubgroupId>{g});
    Universe half(c5, {Irreducible::trivial(), Irreducible::rotation(1)});
    CHECK(realizable_stabilizers(half, g).members() == std::vector<SubgroupId>{0, g});
    CHECK(universe_transfer_system(half) == TransferSystem::complete(c5));
    CHECK(is_compatible(half, IndexingSystem(TransferSystem::complete(c5))));
    CHECK_FALSE(is_compatible(Universe::trivial_universe(c5), IndexingSystem(TransferSystem::complete(c5))));
    auto c4 = lattice_of("C_4");
    CHECK_THROWS_AS(is_compatible(Universe::complete_cyclic(c4),
                                  IndexingSystem(TransferSystem::from_pairs(c4, {{0, 1}}))),
                    NotDiskLike);
    CHECK_THROWS_AS(Universe(c5, {Irreducible::rotation(1)}), InputError);
    auto s3 = lattice_of("S_3");
    Universe reg = Universe::regular(s3);
    CHECK(realizable_stabilizers(reg, s3->top()) == Family::complete(s3, s3->top()));
    CHECK(universe_transfer_system(reg) == TransferSystem::complete(s3));
  }

  TEST_CASE("stabilizers agree with a point simulation") {
    for (int n = 2; n <= 8; ++n) {
      auto lat = lattice_of("C_" + std::to_string(n));
      auto basis = cyclic_nontrivial_irreducibles(n);
      for (std::uint32_t m = 0; m < (1u << basis.size()); ++m) {
        std::vector<Irreducible> irr{Irreducible::trivial()};
        std::vector<int> reps;
        for (std::size_t i = 0; i < basis.size(); ++i)
          if (m >> i & 1) {
            irr.push_back(basis[i]);
            reps.push_back(basis[i].kind == Irreducible::Kind::Sign ? 0 : basis[i].k);
          }
        Universe u(lat, irr);
        std::set<Mask> expect;
        for (Mask s : oracle::cyclic_point_stabilizers(n, reps)) expect.insert(s);
        std::set<Mask> mine;
        for (SubgroupId k : realizable_stabilizers(u, lat->top()).members()) mine.insert(lat->mask(k));
        CHECK_MESSAGE(mine == expect, "n=" << n << " universe " << u.to_string());
      }
    }
  }

  TEST_CASE("universe cubes") {
    for (int n : {2, 3, 4, 5, 6, 8, 12}) {
      auto lat = lattice_of("C_" + std::to_string(n));
      UniverseLatticeReport r = universe_lattice(lat);
      CHECK(r.nodes.size() == (std::size_t{1} << r.basis.size()));
      CHECK(r.all_valid);
      CHECK(r.all_disklike);
      CHECK(r.order_preserving);
      CHECK(r.join_preserving);
      CHECK(r.preserves_min);
      CHECK(r.preserves_max);
      // Independent pass over the cube.
      for (const auto& a : r.nodes) {
        CHECK(validate(*lat, a.system.pairs()).empty());
        CHECK(is_disklike(a.system, true));
        for (const auto& b : r.nodes) {
          if ((a.subset & b.subset) == a.subset) CHECK(a.system.subset_of(b.system));
          CHECK(r.nodes[a.subset | b.subset].system == join(a.system, b.system));
        }
      }
    }
    auto c2 = universe_lattice(lattice_of("C_2"));
    CHECK(c2.basis.size() == 1);
    CHECK(c2.injective);
    auto c5 = universe_lattice(lattice_of("C_5"));
    CHECK(c5.basis.size() == 2);
    CHECK_FALSE(c5.injective);
    REQUIRE(c5.non_injective_witness.has_value());
    auto [a, b] = *c5.non_injective_witness;
    CHECK(std::set<std::uint32_t>{a, b} == std::set<std::uint32_t>{1, 2});
    CHECK(c5.nodes[1].system == TransferSystem::complete(lattice_of("C_5")));
    CHECK_THROWS_AS(universe_lattice(lattice_of("S_3")), InputError);
    CHECK_THROWS_AS(universe_lattice(lattice_of("C_13")), SearchBoundExceeded);
  }

  TEST_CASE("meets are not preserved on C_6") {
    auto c6 = lattice_of("C_6");
    UniverseLatticeReport r = universe_lattice(c6);
    auto bit = [&](const std::string& label) {
      for (std::size_t i = 0; i < r.basis.size(); ++i)
        if (r.basis[i].label() == label) return std::uint32_t{1} << i;
      FAIL("missing " << label);
      return std::uint32_t{0};
    };
    // V(1) has free points, so it yields the system generated by e → G.
    // Sign and V(2) have stabilizers C_3 and C_2, meeting in e, and yield the
    // complete system. The two universes share no nontrivial irreducible.
    std::uint32_t a = bit("V(1)"), b = bit("sign") | bit("V(2)");
    CHECK(r.nodes[a].system == rubin_complete(c6, {{0, c6->top()}}));
    CHECK(r.nodes[b].system == TransferSystem::complete(c6));
    CHECK(r.nodes[a & b].system == TransferSystem::trivial(c6));
    CHECK_FALSE(r.meet_preserving);
    REQUIRE(r.meet_failure_witness.has_value());
    auto [x, y] = *r.meet_failure_witness;
    CHECK(r.nodes[x & y].system != meet(r.nodes[x].system, r.nodes[y].system));
    std::vector<SubgroupId> sign = realizable_in(*c6, Irreducible::sign(), c6->top());
    CHECK(sign == std::vector<SubgroupId>{by_order(*c6, 3), c6->top()});
  }
}
