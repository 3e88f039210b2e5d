#pragma once

#include <optional>
#include <string>
#include <vector>

#include "transferkit/bitset.hpp"
#include "transferkit/lattice.hpp"
#include "transferkit/transfer.hpp"

namespace transferkit {

// A set of subgroups of `ambient`, closed under conjugation by ambient
// elements. Based when it contains the ambient subgroup itself.
class Family {
 public:
  // Validates membership in ambient and conjugation closure; throws InputError.
  Family(LatticePtr lattice, SubgroupId ambient, Bitset members);
  static Family from_list(LatticePtr lattice, SubgroupId ambient, const std::vector<SubgroupId>& members);
  // Closes the list under ambient-conjugation without complaint.
  static Family closure_of(LatticePtr lattice, SubgroupId ambient, const std::vector<SubgroupId>& members);
  static Family based_trivial(LatticePtr lattice, SubgroupId ambient);
  static Family complete(LatticePtr lattice, SubgroupId ambient);

  const SubgroupLattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  SubgroupId ambient() const { return ambient_; }
  const Bitset& bits() const { return members_; }
  bool based() const { return members_[ambient_]; }
  bool contains(SubgroupId k) const { return members_[k]; }
  std::size_t size() const { return members_.count(); }
  std::vector<SubgroupId> members() const { return bits_of(members_); }

  bool subset_of(const Family& o) const { return members_.is_subset_of(o.members_); }
  bool operator==(const Family& o) const { return ambient_ == o.ambient_ && members_ == o.members_; }
  bool operator!=(const Family& o) const { return !(*this == o); }
  bool operator<(const Family& o) const { return bitset_less(members_, o.members_); }

  std::string to_string() const;

 private:
  LatticePtr lattice_;
  SubgroupId ambient_;
  Bitset members_;
};

Family family_meet(const Family& a, const Family& b);
Family family_join(const Family& a, const Family& b);

// ⟨A⟩_f: conjugation closure of A plus G.
Family generated_family(const LatticePtr& lattice, const std::vector<SubgroupId>& a);

// ⟨A⟩_t: Φ of the transfer system generated by {K → G : K ∈ A}.
Family transfer_like_family(const LatticePtr& lattice, const std::vector<SubgroupId>& a);

struct PhiResult {
  Family family;
  bool disklike;  // false means the input was outside Tr^d and Φ is not injective there
};

enum class Strictness { Strict, Permissive };

// Φ(t) = {K : K → G}. Strict mode throws NotDiskLike on non-disk-like input.
PhiResult phi(const TransferSystem& t, Strictness mode = Strictness::Strict);

struct TransferLikeResult {
  bool transfer_like;
  std::vector<SubgroupId> excess;  // members produced by completion beyond f
};
TransferLikeResult is_transfer_like(const Family& f);

// F_H = {K ≤ H : K' ∩ H = K for some K' ∈ F}.
Family restrict_family(const Family& f, SubgroupId h);

// All based families of G, sorted by member bitmask.
std::vector<Family> all_based_families(const LatticePtr& lattice);

}  // namespace transferkit
