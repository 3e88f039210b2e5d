#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "transferkit/gset.hpp"
#include "transferkit/indexing.hpp"

namespace transferkit {

// A finite abelian group with a G-action by automorphisms. Element 0 is zero.
class AbelianGGroup {
 public:
  enum class Carrier { Z2, Z3, Z4, Z2xZ2 };

  // Validates the group laws and that every g acts as an automorphism
  // compatibly with the multiplication of G.
  AbelianGGroup(LatticePtr lattice, std::string name, int order, std::vector<int> add, std::vector<int> action);

  static AbelianGGroup with_trivial_action(LatticePtr lattice, Carrier c);
  // Every action of G on the carrier, one per homomorphism G → Aut(M),
  // in lexicographic order of generator images.
  static std::vector<AbelianGGroup> all_actions(LatticePtr lattice, Carrier c);
  // Z/m with the generators of G acting through the given multipliers.
  static AbelianGGroup cyclic_with_action(LatticePtr lattice, int m, const std::vector<int>& generator_multipliers);

  const SubgroupLattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  const std::string& name() const { return name_; }
  int order() const { return m_; }
  int add(int a, int b) const { return add_[a * m_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int act(Element g, int a) const { return act_[g * m_ + a]; }
  bool is_fixed(SubgroupId h, int a) const;
  std::vector<int> fixed_points(SubgroupId h) const;

 private:
  LatticePtr lattice_;
  std::string name_;
  int m_;
  std::vector<int> add_, neg_, act_;
};

const char* carrier_name(AbelianGGroup::Carrier c);

// X_M(T_+) = M^n for a based G-set T_+ of size n+1, as a based G-set on
// tuples (x_1..x_n) encoded mixed-radix with x_1 most significant, acted on by
// g·(x_i) = (g x_{α(g)⁻¹(i)}).
GSet build_XM(const AbelianGGroup& m, const GSet& t);

// X_M(φ) for a based map φ: point j of the source goes to point φ[j] of the
// target (φ[0] = 0): b_i = Σ_{φ(j)=i} a_j, empty sums being 0.
std::vector<int> apply_map(const AbelianGGroup& m, const std::vector<int>& phi, int target_size,
                           const std::vector<int>& tuple);
std::vector<int> decode_tuple(const AbelianGGroup& m, int code, int n);
int encode_tuple(const AbelianGGroup& m, const std::vector<int>& tuple);

struct SegalCheck {
  bool bijective = true;
  bool equivariant = true;
  bool twisted_matches = true;  // X_M(n_+^α) agrees with (X_M(n_+))^α
  std::size_t points = 0;
  bool ok() const { return bijective && equivariant && twisted_matches; }
};

// δ: X_M(T_+) → F(T_+, M), assembled from the Kronecker maps T_+ → 1_+, is
// compared against independently enumerated based maps with the conjugation
// action.
SegalCheck segal_bijection_check(const AbelianGGroup& m, const GSet& t);

struct TransferMap {
  SubgroupId k, h;
  std::vector<int> domain;  // M^K
  std::vector<int> image;   // t(domain[i])
  bool lands_in_fixed = true;
  bool representative_independent = true;
};

// t_K^H(x) = Σ r x over minimal left coset representatives, recomputed with
// maximal representatives.
TransferMap transfer_map(const AbelianGGroup& m, SubgroupId k, SubgroupId h);

struct MackeyReport {
  bool disklike = true;
  std::vector<Pair> demanded;
  std::size_t transfers_checked = 0;
  std::size_t identities_checked = 0;
  bool pass = true;
  nlohmann::json witness;
  nlohmann::json to_json(const SubgroupLattice& lat) const;
};

// For every transfer K → H of the system, checks t_K^H lands in M^H and
// res_L^H t_K^H = Σ_{a ∈ L\H/K} t_{L∩aKa⁻¹}^L c_a res_{K∩a⁻¹La}^K elementwise
// for every L ≤ H.
MackeyReport verify_semi_mackey(const AbelianGGroup& m, const IndexingSystem& ix);

}  // namespace transferkit
