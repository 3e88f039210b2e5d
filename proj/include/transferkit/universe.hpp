#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "transferkit/family.hpp"
#include "transferkit/indexing.hpp"
#include "transferkit/transfer.hpp"

namespace transferkit {

// An irreducible real representation, known only through dim V^K.
struct Irreducible {
  enum class Kind { Trivial, Sign, Rotation, Table };
  Kind kind = Kind::Trivial;
  int k = 0;              // Rotation: V_n(k), rotation by 2πk/n
  std::string name;       // Table
  std::vector<int> dims;  // Table: dim V^K per subgroup index

  static Irreducible trivial() { return {}; }
  static Irreducible sign() { return {Kind::Sign, 0, {}, {}}; }
  static Irreducible rotation(int k) { return {Kind::Rotation, k, {}, {}}; }
  static Irreducible table(std::string name, std::vector<int> dims) {
    return {Kind::Table, 0, std::move(name), std::move(dims)};
  }
  // "trivial", "sign", "V(k)", or the table name.
  std::string label() const;
  // Inverse of label() for the cyclic kinds.
  static Irreducible parse(const std::string& text);

  bool operator==(const Irreducible& o) const {
    return kind == o.kind && k == o.k && name == o.name && dims == o.dims;
  }
  bool operator<(const Irreducible& o) const;
};

// dim V^K. Cyclic kinds need a builtin cyclic group, where K is C_m with
// m = |K|; tables need one entry per subgroup. Throws DescriptorMismatch.
int fixed_dim(const SubgroupLattice& lat, const Irreducible& v, SubgroupId k);

// Nontrivial irreducibles of C_n: sign when n is even, V(k) for 1 ≤ k < n/2.
std::vector<Irreducible> cyclic_nontrivial_irreducibles(int n);

// A universe as a set of irreducibles, each with infinite multiplicity.
class Universe {
 public:
  // Sorts and deduplicates; throws InputError without the trivial irreducible
  // and DescriptorMismatch for descriptors that do not fit the group.
  Universe(LatticePtr lattice, std::vector<Irreducible> irreducibles);

  static Universe trivial_universe(LatticePtr lattice);
  // Every irreducible of a builtin cyclic group.
  static Universe complete_cyclic(LatticePtr lattice);
  // Trivial plus a table standing in for ℝ[G], dim ℝ[G]^K = [G:K].
  static Universe regular(LatticePtr lattice);

  const SubgroupLattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  const std::vector<Irreducible>& irreducibles() const { return irr_; }
  std::string to_string() const;

 private:
  LatticePtr lattice_;
  std::vector<Irreducible> irr_;
};

// Subgroups K ≤ H that are stabilizers of a vector in one copy of v.
std::vector<SubgroupId> realizable_in(const SubgroupLattice& lat, const Irreducible& v, SubgroupId h);

// Stabilizers of points of res_H U: intersection closure of the union over
// irreducibles, plus H.
Family realizable_stabilizers(const Universe& u, SubgroupId h);

TransferSystem universe_transfer_system(const Universe& u);

// Throws NotDiskLike when the indexing system is not disk-like.
bool is_compatible(const Universe& u, const IndexingSystem& ix);

struct UniverseNode {
  std::uint32_t subset;  // bit i: basis[i] present
  TransferSystem system;
};

struct UniverseLatticeReport {
  std::vector<Irreducible> basis;  // nontrivial irreducibles
  std::vector<UniverseNode> nodes;  // indexed by subset
  bool all_valid = true;
  bool all_disklike = true;
  bool order_preserving = true;
  bool join_preserving = true;
  bool preserves_min = true;
  bool preserves_max = true;
  bool meet_preserving = true;
  bool injective = true;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> non_injective_witness;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> meet_failure_witness;
};

// The cube of universes of C_n with its map to transfer systems. Throws
// SearchBoundExceeded for n > bound, InputError for non-cyclic groups.
UniverseLatticeReport universe_lattice(const LatticePtr& lattice, int bound = 12);

}  // namespace transferkit
