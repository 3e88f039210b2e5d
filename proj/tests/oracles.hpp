#pragma once

// Brute-force reference implementations used to check the library. None of
// them calls the library's closure, validation or orbit code.

#include <cstdint>
#include <vector>

#include "transferkit/gset.hpp"
#include "transferkit/lattice.hpp"
#include "transferkit/permcat.hpp"
#include "transferkit/transfer.hpp"

namespace oracle {

using transferkit::Bitset;
using transferkit::GSet;
using transferkit::Group;
using transferkit::Mask;
using transferkit::SubgroupLattice;

// Every subset of the group closed under multiplication, by scanning all
// 2^|G| subsets. Orders up to 16.
std::vector<Mask> subgroups_by_scan(const Group& g);

// Axiom check on raw element masks: refinement, conjugation, restriction,
// transitivity. `rel` holds strict pairs as (K mask, H mask).
bool is_transfer_system(const Group& g, const std::vector<std::pair<Mask, Mask>>& rel);

// All transfer systems as strict-pair bitsets, by testing every subset of
// the strict pairs with is_transfer_system.
std::vector<Bitset> transfer_systems_by_scan(const SubgroupLattice& lat);

// Smallest element of `systems` containing `rel`, as the intersection of all
// systems containing it.
Bitset smallest_containing(const std::vector<Bitset>& systems, const Bitset& rel);

// Orbits of the H×K action (h,k)·a = h a k⁻¹ on G, as element masks.
std::vector<Mask> double_coset_masks(const Group& g, Mask h, Mask k);

// Point orbits by breadth-first search through the acting elements.
std::vector<std::vector<int>> orbits(const GSet& x);

// Isomorphism by backtracking search for an equivariant bijection.
bool isomorphic_by_search(const GSet& x, const GSet& y);

// Equivariant maps x → y by enumerating all |y|^|x| functions (based maps
// when both are based).
std::uint64_t hom_count_by_enumeration(const GSet& x, const GSet& y);

// Stabilizer subgroups of points of C_n acting on a direct sum with two
// copies of each listed representation; reps are 0 for sign and k > 0 for the
// rotation V(k). Simulated with floating-point rotation matrices on sample
// points. Returns element masks.
std::vector<Mask> cyclic_point_stabilizers(int n, const std::vector<int>& reps);

// Morphisms x → y of Ā_n by trying every tuple of base morphisms α_s and
// keeping those whose squares α_{s∪t} a_{s,t} = b_{s,t} (α_s ⊕ α_t) commute.
std::size_t abar_hom_by_search(const transferkit::AbarCategory& ab, int x, int y);

}  // namespace oracle
