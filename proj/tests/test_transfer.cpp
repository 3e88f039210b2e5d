#include <filesystem>

#include <algorithm>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "transferkit/error.hpp"
#include "transferkit/hasse.hpp"
#include "transferkit/transfer.hpp"

using namespace transferkit;

namespace {

// Subgroup of a builtin cyclic group C_n with the given order.
SubgroupId cyc(const SubgroupLattice& lat, int order) {
  for (SubgroupId h = 0; h < lat.size(); ++h)
    if (lat.order_of(h) == order) return h;
  FAIL("no subgroup of order " << order);
  return -1;
}

std::vector<Bitset> bits_of_all(const std::vector<TransferSystem>& ts) {
  std::vector<Bitset> out;
  for (const auto& t : ts) out.push_back(t.bits());
  return out;
}

}  // namespace

TEST_SUITE("transfer") {
  TEST_CASE("enumeration counts match the 2^pairs scan") {
    for (const char* name : {"C_2", "C_3", "C_4", "C_9", "C_8", "C_27", "C_6", "C_10", "S_3", "C_2xC_2", "C_12",
                             "D_3", "C_16"}) {
      auto lat = lattice_of(name, 64);
      if (lat->strict_pairs().size() > 16) continue;
      std::vector<Bitset> expect = oracle::transfer_systems_by_scan(*lat);
      std::sort(expect.begin(), expect.end(), bitset_less);
      CHECK_MESSAGE(bits_of_all(enumerate_all(lat)) == expect, name);
    }
  }

  TEST_CASE("Catalan numbers for cyclic p-groups") {
    CHECK(enumerate_all(lattice_of("C_2")).size() == 2);
    CHECK(enumerate_all(lattice_of("C_3")).size() == 2);
    CHECK(enumerate_all(lattice_of("C_4")).size() == 5);
    CHECK(enumerate_all(lattice_of("C_25", 64)).size() == 5);
    CHECK(enumerate_all(lattice_of("C_8")).size() == 14);
    CHECK(enumerate_all(lattice_of("C_27", 64)).size() == 14);
    CHECK(enumerate_all(lattice_of("C_16")).size() == 42);
    CHECK(enumerate_all(lattice_of("C_32", 64)).size() == 132);
  }

  TEST_CASE("enumeration is independent of the worker count") {
    for (const char* name : {"D_4", "C_12", "S_4"}) {
      auto lat = lattice_of(name);
      auto one = enumerate_all(lat, {1, {}});
      auto four = enumerate_all(lat, {4, {}});
      CHECK(bits_of_all(one) == bits_of_all(four));
      for (const auto& t : one) CHECK(validate(*lat, t.pairs()).empty());
      for (std::size_t i = 1; i < one.size(); ++i) CHECK(one[i - 1] < one[i]);
    }
  }

  TEST_CASE("enumeration of larger groups is closed and valid") {
    // Every system is the join of the closures of its single pairs, so the
    // set closed under "join with one generator" from the trivial system is
    // all of Tr(G).
    for (const char* name : {"D_4", "A_4", "C_2xC_4"}) {
      auto lat = lattice_of(name);
      std::vector<TransferSystem> gens;
      for (const Pair& p : lat->strict_pairs()) gens.push_back(rubin_complete(lat, {p}));
      std::set<Bitset, bool (*)(const Bitset&, const Bitset&)> seen(bitset_less);
      std::vector<TransferSystem> queue{TransferSystem::trivial(lat)};
      seen.insert(queue[0].bits());
      for (std::size_t i = 0; i < queue.size(); ++i)
        for (const auto& g : gens) {
          TransferSystem j = join(queue[i], g);
          if (seen.insert(j.bits()).second) queue.push_back(j);
        }
      std::vector<Bitset> expect(seen.begin(), seen.end());
      CHECK_MESSAGE(bits_of_all(enumerate_all(lat)) == expect, name);
    }
  }

  TEST_CASE("on-disk cache round trip") {
    auto dir = std::filesystem::temp_directory_path() / "transferkit-cache-test";
    std::filesystem::remove_all(dir);
    auto lat = lattice_of("D_4");
    auto first = enumerate_all(lat, {1, dir});
    CHECK(std::distance(std::filesystem::directory_iterator(dir), {}) == 1);
    auto second = enumerate_all(lat, {2, dir});
    CHECK(bits_of_all(first) == bits_of_all(second));
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("search bound") {
    CHECK_THROWS_AS(enumerate_all(lattice_of("C_2xC_2xC_2xC_2", 64)), SearchBoundExceeded);
  }

  TEST_CASE("validate examples") {
    auto c4 = lattice_of("C_4");
    CHECK(validate(*c4, {{0, 1}}).empty());
    CHECK(validate(*c4, {}).empty());
    auto c6 = lattice_of("C_6");
    SubgroupId e = 0, c2 = cyc(*c6, 2), c3 = cyc(*c6, 3), g = c6->top();
    auto vs = validate(*c6, {{c3, g}});
    REQUIRE(!vs.empty());
    CHECK(vs[0].axiom == "restriction");
    CHECK(vs[0].missing == Pair{e, c2});
    CHECK(vs[0].via == c2);
    vs = validate(*c6, {{c2, c3}});
    REQUIRE(!vs.empty());
    CHECK(vs[0].axiom == "refines");
    auto s3 = lattice_of("S_3");
    vs = validate(*s3, {{0, 1}});
    REQUIRE(!vs.empty());
    CHECK(vs[0].axiom == "conjugation");
  }

  TEST_CASE("rubin closure examples") {
    auto c6 = lattice_of("C_6");
    SubgroupId e = 0, c2 = cyc(*c6, 2), c3 = cyc(*c6, 3), g = c6->top();
    TransferSystem t = rubin_complete(c6, {{c3, g}});
    CHECK(t.relates(e, c2));
    CHECK(t.relates(c3, g));
    CHECK_FALSE(t.relates(c2, g));
    CHECK(t.strict_count() == 2);
    auto s3 = lattice_of("S_3");
    // e → G restricts to e → H for every H and forces nothing else.
    TransferSystem from_e = rubin_complete(s3, {{0, s3->top()}});
    CHECK(from_e.strict_count() == 5);
    for (SubgroupId h = 1; h < s3->size(); ++h) CHECK(from_e.relates(0, h));
    CHECK(rubin_complete(s3, {}) == TransferSystem::trivial(s3));
    CHECK_THROWS_AS(rubin_complete(c6, {{c2, c3}}), NotRefining);
    RubinStages st = rubin_stages(*c6, {{c3, g}});
    CHECK(st.r0.count() == 1);
    CHECK(st.r1.count() == 1);
    CHECK(st.r2.count() == 2);
    CHECK(st.r3.count() == 2);
  }

  TEST_CASE("closure agrees with the smallest containing system") {
    for (const char* name : {"C_8", "C_6", "S_3", "C_2xC_2", "C_12"}) {
      auto lat = lattice_of(name);
      std::vector<Bitset> all = oracle::transfer_systems_by_scan(*lat);
      std::size_t n = lat->strict_pairs().size();
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); m += (n > 10 ? 7 : 1)) {
        Bitset rel(n);
        std::vector<Pair> pairs;
        for (std::size_t i = 0; i < n; ++i)
          if (m >> i & 1) {
            rel[i] = true;
            pairs.push_back(lat->strict_pairs()[i]);
          }
        TransferSystem t = rubin_complete(lat, pairs);
        CHECK(t.bits() == oracle::smallest_containing(all, rel));
        // closure operator: extensive and idempotent
        CHECK(rel.is_subset_of(t.bits()));
        CHECK(rubin_complete(lat, t.pairs()) == t);
      }
    }
  }

  TEST_CASE("meet and join") {
    auto c4 = lattice_of("C_4");
    auto a = TransferSystem::from_pairs(c4, {{0, 1}});
    auto c = TransferSystem::from_pairs(c4, {{1, 2}});
    CHECK(join(a, c) == TransferSystem::complete(c4));
    CHECK(meet(a, c) == TransferSystem::trivial(c4));
    for (const char* name : {"C_4", "C_8", "C_6", "S_3", "D_4"}) {
      auto lat = lattice_of(name);
      auto all = enumerate_all(lat);
      auto top = TransferSystem::complete(lat), bot = TransferSystem::trivial(lat);
      std::size_t step = all.size() > 40 ? 7 : 1;
      for (std::size_t i = 0; i < all.size(); i += step) {
        CHECK(meet(all[i], top) == all[i]);
        CHECK(join(all[i], bot) == all[i]);
        for (std::size_t j = 0; j < all.size(); j += step) {
          CHECK(meet(all[i], join(all[i], all[j])) == all[i]);
          CHECK(join(all[i], meet(all[i], all[j])) == all[i]);
          CHECK(join(all[i], all[j]) == join(all[j], all[i]));
        }
      }
    }
  }

  TEST_CASE("disk-like examples") {
    auto c4 = lattice_of("C_4");
    auto bad = TransferSystem::from_pairs(c4, {{0, 1}});
    CHECK_FALSE(is_disklike(bad, true));
    CHECK(disklike_core(bad) == TransferSystem::trivial(c4));
    for (const char* name : {"C_4", "S_3", "D_4", "A_4"}) {
      auto lat = lattice_of(name);
      CHECK(is_disklike(TransferSystem::trivial(lat), true));
      CHECK(is_disklike(TransferSystem::complete(lat), true));
      CHECK(disklike_core(TransferSystem::complete(lat)) == TransferSystem::complete(lat));
    }
    auto c6 = lattice_of("C_6");
    auto t = TransferSystem::from_pairs(c6, {{cyc(*c6, 3), c6->top()}, {0, cyc(*c6, 2)}});
    CHECK(is_disklike(t, true));
    CHECK(t.top_level_sources() == std::vector<SubgroupId>{cyc(*c6, 3), c6->top()});
  }

  TEST_CASE("disk-like characterizations agree with the oracle") {
    for (const char* name : {"C_4", "C_8", "C_6", "S_3", "D_4", "C_12", "C_2xC_2", "A_4", "C_9"}) {
      auto lat = lattice_of(name);
      auto all = enumerate_all(lat);
      std::vector<Bitset> bits = bits_of_all(all);
      std::vector<TransferSystem> disk;
      for (const auto& t : all) {
        bool b = disklike_by_intersection(t), a = disklike_by_generation(t);
        CHECK(a == b);
        // (a) by the oracle: the smallest system containing the top-level pairs.
        Bitset top(lat->strict_pairs().size());
        for (SubgroupId k : t.top_level_sources())
          if (k != lat->top()) top[lat->pair_index(k, lat->top())] = true;
        CHECK(b == (oracle::smallest_containing(bits, top) == t.bits()));
        TransferSystem core = disklike_core(t);
        CHECK(core.subset_of(t));
        CHECK(is_disklike(core));
        CHECK((core == t) == b);
        if (b) disk.push_back(t);
      }
      // Maximality of the core among disk-like subsystems, and the disk-like
      // systems are closed under join.
      for (const auto& t : all) {
        TransferSystem core = disklike_core(t);
        for (const auto& d : disk)
          if (d.subset_of(t)) CHECK(d.subset_of(core));
      }
      for (const auto& s : disk)
        for (const auto& u : disk) CHECK(is_disklike(join(s, u)));
    }
  }

  TEST_CASE("covering edges match the pairwise definition") {
    auto covers = [](const std::vector<TransferSystem>& v) {
      std::set<std::pair<int, int>> out;
      for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) {
          if (i == j || !v[i].subset_of(v[j])) continue;
          bool between = false;
          for (std::size_t k = 0; k < v.size() && !between; ++k)
            between = k != i && k != j && v[i].subset_of(v[k]) && v[k].subset_of(v[j]);
          if (!between) out.emplace(static_cast<int>(i), static_cast<int>(j));
        }
      return out;
    };
    for (const char* name : {"C_4", "S_3", "D_4", "C_12", "A_4"}) {
      CAPTURE(name);
      auto all = enumerate_all(lattice_of(name));
      auto e = covering_edges(all);
      CHECK(std::set<std::pair<int, int>>(e.begin(), e.end()) == covers(all));
      // Every other system: covers are not closures of single additions.
      std::vector<TransferSystem> part;
      for (std::size_t i = 0; i < all.size(); i += 2) part.push_back(all[i]);
      auto pe = covering_edges(part);
      CHECK(std::set<std::pair<int, int>>(pe.begin(), pe.end()) == covers(part));
    }
  }
}
