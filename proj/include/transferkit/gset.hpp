#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "transferkit/family.hpp"
#include "transferkit/lattice.hpp"

namespace transferkit {

// A finite H-set n^α for a subgroup H (the acting subgroup) of the lattice's
// group. Points are 0..size-1; a based set has G-fixed basepoint 0.
class GSet {
 public:
  // `images` maps elements of H to permutations. Elements missing from the map
  // are filled in from products of the given ones; the given elements must
  // generate H and the result must be a homomorphism.
  static GSet from_action(LatticePtr lattice, SubgroupId acting, int size, bool based,
                          const std::map<Element, Perm>& images);
  // H/K on left cosets, listed by their minimal elements in increasing order.
  static GSet orbit(LatticePtr lattice, SubgroupId acting, SubgroupId k);
  static GSet trivial(LatticePtr lattice, SubgroupId acting, int size, bool based = false);
  static GSet empty(LatticePtr lattice, SubgroupId acting) { return trivial(std::move(lattice), acting, 0); }
  // The based point 0_+.
  static GSet point_based(LatticePtr lattice, SubgroupId acting) { return trivial(std::move(lattice), acting, 1, true); }

  const SubgroupLattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  SubgroupId acting() const { return acting_; }
  int size() const { return size_; }
  bool based() const { return based_; }
  // Points excluding the basepoint.
  int free_size() const { return size_ - (based_ ? 1 : 0); }

  int act(Element g, int x) const { return images_[static_cast<std::size_t>(g) * size_ + x]; }
  Perm permutation(Element g) const;
  SubgroupId stabilizer(int x) const;

  bool operator==(const GSet& o) const {
    return lattice_ == o.lattice_ && acting_ == o.acting_ && based_ == o.based_ && size_ == o.size_ &&
           images_ == o.images_;
  }

 private:
  GSet(LatticePtr lattice, SubgroupId acting, int size, bool based, std::vector<int> images);
  friend GSet make_gset(LatticePtr, SubgroupId, int, bool, std::vector<int>);
  friend struct GSetBuilder;

  LatticePtr lattice_;
  SubgroupId acting_;
  int size_;
  bool based_;
  std::vector<int> images_;  // |G| x size; rows for elements outside H are -1
};

// Builds from a raw |G| x size image table, validating the homomorphism laws.
GSet make_gset(LatticePtr lattice, SubgroupId acting, int size, bool based, std::vector<int> images);

// Multiset of H-conjugacy classes of orbit stabilizers, each class stored as
// its smallest member; the basepoint orbit is not counted.
struct OrbitType {
  SubgroupId acting = 0;
  std::vector<SubgroupId> classes;  // sorted

  int size(const SubgroupLattice& lat) const;  // Σ [H:K]
  bool operator==(const OrbitType& o) const { return acting == o.acting && classes == o.classes; }
  bool operator!=(const OrbitType& o) const { return !(*this == o); }
  bool operator<(const OrbitType& o) const;  // by acting, total size is not used: see orbit_types_up_to
  std::string to_string(const SubgroupLattice& lat) const;
};

struct Orbit {
  std::vector<int> points;  // ascending
  int representative;       // minimal point
  SubgroupId stabilizer;    // of the representative
  bool basepoint = false;
};

struct OrbitDecomposition {
  std::vector<Orbit> orbits;  // by representative; includes the basepoint orbit for based sets
  OrbitType type;
};

OrbitDecomposition orbit_decompose(const GSet& x);
OrbitType orbit_type(const GSet& x);

// Φ(X). Based sets contribute the acting group through their basepoint.
Family isotropy(const GSet& x);

GSet restrict(const GSet& x, SubgroupId h);
// ind_H^L X = L ×_H X on pairs (left coset rep, point), index rep_i * |X| + p.
// Unbased inputs only.
GSet induce(const GSet& x, SubgroupId to);
// coind_H^L X = Map_H(L, X), functions determined by their values on the right
// cosets Hs (minimal representatives, ascending), encoded mixed-radix with the
// first coset most significant.
GSet coinduce(const GSet& x, SubgroupId to);

// Points of x then points of y; based exactly when x is.
GSet coproduct(const GSet& x, const GSet& y);
// Row-major pairs (i, j) ↦ i * |y| + j; based when both are.
GSet product(const GSet& x, const GSet& y);
GSet smash(const GSet& x, const GSet& y);
GSet wedge(const GSet& x, const GSet& y);
GSet add_basepoint(const GSet& x);
GSet remove_basepoint(const GSet& x);

// c_a: the aHa⁻¹-set with (a h a⁻¹)·t = h·t.
GSet conjugate_set(const GSet& x, Element a);
// Transport along a bijection of points (new index of old point p is perm[p]).
GSet relabel(const GSet& x, const Perm& perm);
// Sub-H-set on a union of orbits, keeping point order.
GSet sub_gset(const GSet& x, const std::vector<int>& points);

struct IsoResult {
  bool isomorphic;
  std::vector<int> witness;  // x point ↦ y point
};
IsoResult iso_test(const GSet& x, const GSet& y);

// ∐ over H\G/K of H/(H ∩ aKa⁻¹), in double-coset order.
GSet double_coset_decompose(const LatticePtr& lattice, SubgroupId h, SubgroupId k);

// Canonical H-set with the given orbit type (orbits in the stored order).
GSet from_orbit_type(const LatticePtr& lattice, const OrbitType& type, bool based = false);

// Orbit types of all H-sets with at most `bound` points, sorted by point count
// then lexicographically on classes.
std::vector<OrbitType> orbit_types_up_to(const SubgroupLattice& lat, SubgroupId h, int bound);

bool is_equivariant(const GSet& x, const GSet& y, const std::vector<int>& map);
// Number of equivariant maps (based maps when both are based).
std::uint64_t hom_count(const GSet& x, const GSet& y);

std::string describe(const GSet& x);

}  // namespace transferkit
