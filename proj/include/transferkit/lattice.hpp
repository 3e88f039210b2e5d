#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "transferkit/group.hpp"

namespace transferkit {

using SubgroupId = int;
using Mask = std::uint64_t;

inline constexpr int kDefaultOrderBound = 24;

struct DoubleCoset {
  Element representative;    // minimal element of HaK
  int size;                  // |HaK|
  SubgroupId intersection;   // H ∩ aKa⁻¹
};

// All subgroups of a group in canonical order (cardinality, then the sorted
// element list lexicographically), with containment, conjugation and
// meet/join precomputed. Index 0 is the trivial subgroup, the last index is G.
class SubgroupLattice {
 public:
  static std::shared_ptr<const SubgroupLattice> make(Group g, int order_bound = kDefaultOrderBound);
  static std::shared_ptr<const SubgroupLattice> make(std::shared_ptr<const Group> g,
                                                     int order_bound = kDefaultOrderBound);

  const Group& group() const { return *group_; }
  const std::shared_ptr<const Group>& group_ptr() const { return group_; }

  int size() const { return static_cast<int>(masks_.size()); }
  SubgroupId trivial() const { return 0; }
  SubgroupId top() const { return size() - 1; }

  Mask mask(SubgroupId h) const { return masks_[h]; }
  int order_of(SubgroupId h) const { return __builtin_popcountll(masks_[h]); }
  int index_in(SubgroupId k, SubgroupId h) const { return order_of(h) / order_of(k); }
  std::vector<Element> elements(SubgroupId h) const;
  bool has_element(SubgroupId h, Element a) const { return masks_[h] >> a & 1; }

  // sub ⊆ sup
  bool contains(SubgroupId sub, SubgroupId sup) const { return leq_[sub * size() + sup]; }
  SubgroupId meet(SubgroupId a, SubgroupId b) const { return meet_[a * size() + b]; }
  SubgroupId join(SubgroupId a, SubgroupId b) const { return join_[a * size() + b]; }

  // aHa⁻¹
  SubgroupId conjugate(SubgroupId h, Element a) const { return conj_[a * size() + h]; }

  // Index of the subgroup with exactly this element set, or -1.
  SubgroupId find(Mask m) const;
  // Subgroup generated by a set of elements.
  SubgroupId generated(Mask elems) const;

  // Conjugacy class id (classes numbered by their smallest member).
  int class_of(SubgroupId h) const { return class_of_[h]; }
  const std::vector<std::vector<SubgroupId>>& conjugacy_classes() const { return classes_; }
  // Smallest index among the conjugates of k by elements of `by`.
  SubgroupId canonical_conjugate(SubgroupId k, SubgroupId by) const;
  // The conjugates of k by elements of `by`, sorted.
  std::vector<SubgroupId> conjugates_under(SubgroupId k, SubgroupId by) const;
  // Some a in `by` with a k a⁻¹ = target, or -1.
  Element conjugator(SubgroupId k, SubgroupId target, SubgroupId by) const;

  // Subgroups of h, ascending.
  std::vector<SubgroupId> subgroups_of(SubgroupId h) const;
  // Minimal proper overgroups of k inside h.
  std::vector<SubgroupId> minimal_overgroups(SubgroupId k, SubgroupId h) const;
  bool is_normal(SubgroupId k, SubgroupId in) const;

  // Left cosets aK in h, each represented by its minimal element; sorted.
  std::vector<Element> left_coset_reps(SubgroupId k, SubgroupId h) const;
  // Double cosets H a K inside the ambient subgroup (default G), ordered by
  // representative.
  std::vector<DoubleCoset> double_cosets(SubgroupId h, SubgroupId k) const;
  std::vector<DoubleCoset> double_cosets(SubgroupId h, SubgroupId k, SubgroupId ambient) const;

  // Strict pairs K < H, ordered by H ascending then K ascending. This is the
  // bit index space for transfer systems.
  const std::vector<std::pair<SubgroupId, SubgroupId>>& strict_pairs() const { return pairs_; }
  // Bit index of the strict pair (k,h), or -1 when k = h or k ⊄ h.
  int pair_index(SubgroupId k, SubgroupId h) const { return pair_index_[k * size() + h]; }

  // Human label: "e", "G", or generators such as "<(1 2)>".
  std::string label(SubgroupId h) const;

 private:
  SubgroupLattice() = default;
  void build(int order_bound);

  std::shared_ptr<const Group> group_;
  std::vector<Mask> masks_;
  std::unordered_map<Mask, SubgroupId> index_;
  std::vector<char> leq_;
  std::vector<SubgroupId> meet_, join_, conj_;
  std::vector<int> class_of_;
  std::vector<std::vector<SubgroupId>> classes_;
  std::vector<std::pair<SubgroupId, SubgroupId>> pairs_;
  std::vector<int> pair_index_;
};

using LatticePtr = std::shared_ptr<const SubgroupLattice>;

// Convenience: builtin group name to lattice.
LatticePtr lattice_of(std::string_view builtin_name, int order_bound = kDefaultOrderBound);

}  // namespace transferkit
