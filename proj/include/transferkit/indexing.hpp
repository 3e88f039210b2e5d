#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "transferkit/family.hpp"
#include "transferkit/gset.hpp"
#include "transferkit/transfer.hpp"

namespace transferkit {

// The indexing system of a transfer system: an H-set is admissible when every
// orbit stabilizer K satisfies K → H. Membership is computed, never stored.
class IndexingSystem {
 public:
  explicit IndexingSystem(TransferSystem source) : source_(std::move(source)) {}
  const TransferSystem& source() const { return source_; }
  const SubgroupLattice& lattice() const { return source_.lattice(); }
  const LatticePtr& lattice_ptr() const { return source_.lattice_ptr(); }
  bool admits_type(const OrbitType& type) const;

 private:
  TransferSystem source_;
};

struct OrbitWitness {
  int representative;
  SubgroupId stabilizer;
  bool transfers;  // stabilizer → acting group
};

struct Admission {
  bool admissible;
  std::vector<OrbitWitness> orbits;  // non-basepoint orbits
};

Admission admits(const GSet& t, const IndexingSystem& ix);

int default_size_bound(const SubgroupLattice& lat);

// Admissible H-sets with at most `bound` points, up to isomorphism.
std::vector<OrbitType> level(const IndexingSystem& ix, SubgroupId h, int bound);

using Membership = std::function<bool(const GSet&)>;

Membership membership_of(const IndexingSystem& ix);
// Fault injection: membership of ix except that the single orbit H/K of the
// first strict pair is rejected (the one-point G-set when there is none).
Membership corrupted_membership(const IndexingSystem& ix);

struct AxiomResult {
  std::string axiom;  // I1 .. I8
  bool pass = true;
  std::size_t checked = 0;
  nlohmann::json witness;  // null when passing
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  bool all_pass() const;
  bool passes(const std::string& axiom) const;
  nlohmann::json to_json() const;
};

// Exhaustive check of I1-I8 over all H-sets of at most `bound` points for
// every subgroup H, using the given membership predicate.
AxiomReport verify_axioms(const LatticePtr& lattice, const Membership& member, int bound);
AxiomReport verify_axioms(const IndexingSystem& ix, int bound);

struct RestrictionCheck {
  bool agree = true;
  bool source_disklike = true;
  std::optional<OrbitType> witness;  // first H-set where the predicates disagree
  bool admits_side = false;          // admits() verdict at the witness
};

// Compares admits() at level H with "all stabilizers lie in F_H" where F = Φ(source).
// Strict mode throws NotDiskLike for non-disk-like sources.
RestrictionCheck restriction_identity_check(const IndexingSystem& ix, SubgroupId h, int bound,
                                            Strictness mode = Strictness::Strict);

struct GammaObject {
  GSet gset;  // based G-set n_+^α
  std::vector<OrbitWitness> orbits;
};

// Throws InputError unless `based_set` is a based G-set whose underlying set is admissible.
GammaObject make_gamma_object(const GSet& based_set, const IndexingSystem& ix);

// All based maps s → t with g·f = g f g⁻¹. A map f is encoded mixed-radix in
// base |t| with f(1) most significant, so the zero map is point 0.
GSet gamma_hom(const GammaObject& s, const GammaObject& t);
std::vector<int> decode_based_map(int code, int source_size, int target_size);
int encode_based_map(const std::vector<int>& f, int target_size);

struct Embedding {
  GSet target;                        // the G-set T'
  std::vector<int> map;               // point of t ↦ point of res_H T'
  std::vector<SubgroupId> witnesses;  // K' chosen per non-basepoint orbit of t
};

// For each orbit H/K of t picks the smallest K' with K' → G and K' ∩ H = K and
// contributes G/K'. Throws NoWitness when some orbit has none.
Embedding embed_via_disklike(const GSet& t, const IndexingSystem& ix);

}  // namespace transferkit
