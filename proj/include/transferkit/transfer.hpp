#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "transferkit/bitset.hpp"
#include "transferkit/lattice.hpp"

namespace transferkit {

// (K, H): a transfer K → H, read "K-orbits may be transferred up to H".
using Pair = std::pair<SubgroupId, SubgroupId>;

// A transfer system stored as a bit per strict pair of the lattice
// (reflexive pairs are implicit).
class TransferSystem {
 public:
  TransferSystem(LatticePtr lattice, Bitset strict_bits);

  static TransferSystem trivial(LatticePtr lattice);
  static TransferSystem complete(LatticePtr lattice);
  // Validates; throws InputError naming the first violation.
  static TransferSystem from_pairs(LatticePtr lattice, const std::vector<Pair>& pairs);

  const SubgroupLattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  const Bitset& bits() const { return bits_; }

  bool relates(SubgroupId k, SubgroupId h) const {
    if (k == h) return true;
    int i = lattice_->pair_index(k, h);
    return i >= 0 && bits_[i];
  }
  // Strict pairs in index order.
  std::vector<Pair> pairs() const;
  std::size_t strict_count() const { return bits_.count(); }
  // Sources K with K → G, including G itself.
  std::vector<SubgroupId> top_level_sources() const;

  bool subset_of(const TransferSystem& other) const { return bits_.is_subset_of(other.bits_); }
  bool operator==(const TransferSystem& o) const { return bits_ == o.bits_; }
  bool operator!=(const TransferSystem& o) const { return !(*this == o); }
  bool operator<(const TransferSystem& o) const { return bitset_less(bits_, o.bits_); }

 private:
  LatticePtr lattice_;
  Bitset bits_;
};

struct Violation {
  std::string axiom;     // refines | conjugation | restriction | transitivity
  Pair cause;            // the pair (or first pair) that forces the requirement
  Pair missing;          // required pair that is absent; equals cause for "refines"
  Element element = -1;  // conjugating element, for "conjugation"
  SubgroupId via = -1;   // L for "restriction", the middle subgroup for "transitivity"
  std::string message;
};

// Checks a relation (reflexive pairs may be included or omitted). An empty
// result means the relation plus reflexives is a transfer system.
std::vector<Violation> validate(const SubgroupLattice& lattice, const std::vector<Pair>& relation);

// The four Rubin stages: R0 the input, R1 conjugation closure, R2 restriction
// closure, R3 reflexive-transitive closure. Bits are over strict pairs.
struct RubinStages {
  Bitset r0, r1, r2, r3;
};
RubinStages rubin_stages(const SubgroupLattice& lattice, const std::vector<Pair>& relation);

// Throws NotRefining when some input pair has K ⊄ H.
TransferSystem rubin_complete(const LatticePtr& lattice, const std::vector<Pair>& relation);

TransferSystem meet(const TransferSystem& a, const TransferSystem& b);
TransferSystem join(const TransferSystem& a, const TransferSystem& b);

struct EnumerateOptions {
  int jobs = 1;
  // Directory holding per-group result files; no caching when empty.
  std::filesystem::path cache_dir;
  std::size_t max_results = 2'000'000;
};

// Every transfer system of the lattice, sorted numerically by strict-pair
// bitmask. Throws SearchBoundExceeded when the lattice has more than 64
// subgroups or the result count passes options.max_results.
std::vector<TransferSystem> enumerate_all(const LatticePtr& lattice, const EnumerateOptions& options = {});

// Cache directory from TRANSFERKIT_CACHE, or empty.
std::filesystem::path cache_dir_from_env();

// Characterization (b): every K → H is H ∩ K' for some K' → G.
bool disklike_by_intersection(const TransferSystem& t);
// Characterization (a): t is generated by its transfers into G.
bool disklike_by_generation(const TransferSystem& t);
// Evaluates (b); with `cross_check`, also (a), throwing std::logic_error on
// disagreement.
bool is_disklike(const TransferSystem& t, bool cross_check = false);

// Largest disk-like system contained in t.
TransferSystem disklike_core(const TransferSystem& t);

std::string pairs_to_string(const SubgroupLattice& lattice, const std::vector<Pair>& pairs);

}  // namespace transferkit
