#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "transferkit/gset.hpp"
#include "transferkit/segal.hpp"

namespace transferkit {

// A finite category with dense tables. compose(f, g) is f ∘ g and is -1 when
// target(g) != source(f). An optional G-action acts on objects and morphisms.
class FinCategory {
 public:
  FinCategory() = default;
  FinCategory(int objects, std::vector<int> source, std::vector<int> target, std::vector<int> identity,
              std::vector<int> composition);

  int objects() const { return nobj_; }
  int morphisms() const { return static_cast<int>(src_.size()); }
  int source(int f) const { return src_[f]; }
  int target(int f) const { return tgt_[f]; }
  int identity(int x) const { return id_[x]; }
  int compose(int f, int g) const { return comp_[static_cast<std::size_t>(f) * morphisms() + g]; }
  int inverse(int f) const { return inv_[f]; }
  bool is_iso(int f) const { return inv_[f] >= 0; }
  const std::vector<int>& hom(int x, int y) const { return hom_[static_cast<std::size_t>(x) * nobj_ + y]; }

  void set_action(std::shared_ptr<const Group> group, std::vector<int> on_objects, std::vector<int> on_morphisms);
  bool has_action() const { return group_ != nullptr; }
  const Group& group() const { return *group_; }
  int act_object(int g, int x) const { return act_ob_[static_cast<std::size_t>(g) * nobj_ + x]; }
  int act_morphism(int g, int f) const { return act_mor_[static_cast<std::size_t>(g) * morphisms() + f]; }

  // Exhaustive unit/associativity/action checks; throws DiagramFailure.
  void validate() const;

 private:
  int nobj_ = 0;
  std::vector<int> src_, tgt_, id_, comp_, inv_;
  std::vector<std::vector<int>> hom_;
  std::shared_ptr<const Group> group_;
  std::vector<int> act_ob_, act_mor_;
};

// External norm ⊕_T for T = n^σ, with untwistors v_T(A): ⊕_T(A) → ⊕_n(A).
// Tables are keyed by tuples; a missing key means "undefined".
struct Norms {
  int n = 0;
  std::vector<Perm> sigma;  // σ(g) on {0..n-1}, one per group element
  std::map<std::vector<int>, int> objects, morphisms, untwistors;
};

// A strict permutative category whose tensor may be partial: a ⊕ b is -1
// outside a down-closed domain. The group acts through the underlying
// category's action.
class PermCat {
 public:
  PermCat(std::string name, LatticePtr lattice, FinCategory cat, int unit, std::vector<int> tensor_objects,
          std::vector<int> tensor_morphisms, std::vector<int> beta, std::optional<Norms> norms = std::nullopt);

  const std::string& name() const { return name_; }
  const SubgroupLattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  const FinCategory& cat() const { return cat_; }
  int unit() const { return unit_; }
  int tensor(int a, int b) const { return tob_[static_cast<std::size_t>(a) * cat_.objects() + b]; }
  int tensor_morphism(int f, int g) const { return tmor_[static_cast<std::size_t>(f) * cat_.morphisms() + g]; }
  int beta(int a, int b) const { return beta_[static_cast<std::size_t>(a) * cat_.objects() + b]; }
  int act_object(Element g, int x) const { return cat_.act_object(g, x); }
  int act_morphism(Element g, int f) const { return cat_.act_morphism(g, f); }

  // Iterated tensors, left to right; the empty sum is the unit. -1 if undefined.
  int sum(const std::vector<int>& objs) const;
  int sum_morphisms(const std::vector<int>& mors) const;
  // The coherence isomorphism ⊕_i Y_i → ⊕_i Y_{rho[i]}, composed from twists of
  // adjacent factors.
  int reorder(const std::vector<int>& objs, const Perm& rho) const;

  bool has_norms() const { return norms_.has_value(); }
  const Norms& norms() const { return *norms_; }
  int norm_object(const std::vector<int>& tuple) const;
  int norm_morphism(const std::vector<int>& tuple) const;
  int untwistor(const std::vector<int>& tuple) const;
  // (h._σ A)_i = h A_{σ(h)⁻¹(i)}, on object or morphism tuples.
  std::vector<int> twist_objects(Element h, const std::vector<int>& tuple) const;
  std::vector<int> twist_morphisms(Element h, const std::vector<int>& tuple) const;

  // Object tuples of length n whose total sum is defined, lexicographic.
  std::vector<std::vector<int>> tuples(int n) const;

  // Checks the category, then P1 (strict unit/associativity, functoriality of
  // ⊕), P2 (twist), the G-action, and with norms P3 and P4. Returns per-stage
  // counts; throws DiagramFailure naming the first failing stage.
  nlohmann::json validate() const;

 private:
  std::string name_;
  LatticePtr lattice_;
  FinCategory cat_;
  int unit_;
  std::vector<int> tob_, tmor_, beta_;
  std::optional<Norms> norms_;
};

// Elements of M with only identity morphisms; ⊕ is addition. With `t` (an
// unbased G-set) the norm is ⊕_T = Σ with identity untwistors; the default is
// the trivial 2-point set.
PermCat discrete_monoid_seed(const AbelianGGroup& m, const GSet* t = nullptr);
// Skeletal finite sets {0..max} with bijections, ⊕ = addition with block sums
// (defined while the total stays <= max), trivial action and trivial σ on n points.
PermCat skeletal_sets_seed(const LatticePtr& lattice, int n = 2, int max = 3);
// The skeletal seed on 2 points with v_T(0, 2) replaced by the swap of 2,
// breaking unit normalization.
PermCat broken_untwistor_seed(const LatticePtr& lattice);

nlohmann::json permcat_to_json(const PermCat& a);
PermCat permcat_from_json(const nlohmann::json& j);

// ⟨A_s, a_{s,t}⟩ over subsets of {0..n-1} as bit masks. a holds every ordered
// disjoint pair at s * 2^n + t (including the empty ones), -1 elsewhere.
struct SystemObject {
  std::vector<int> A;
  std::vector<int> a;
  bool operator<(const SystemObject& o) const { return A != o.A ? A < o.A : a < o.a; }
  bool operator==(const SystemObject& o) const { return A == o.A && a == o.a; }
};

class AbarCategory {
 public:
  int n() const { return n_; }
  const PermCat& base() const { return base_; }
  const std::vector<Perm>& sigma() const { return sigma_; }
  const std::vector<SystemObject>& objects() const { return objects_; }
  int object_count() const { return static_cast<int>(objects_.size()); }
  int morphism_count() const { return static_cast<int>(comps_.size()); }
  const std::vector<int>& components(int f) const { return comps_[f]; }
  int source(int f) const { return msrc_[f]; }
  int target(int f) const { return mtgt_[f]; }
  int identity(int x) const { return ident_[x]; }
  const std::vector<int>& hom(int x, int y) const;

  int find_object(const SystemObject& x) const;
  int find_morphism(int src, int tgt, const std::vector<int>& comps) const;
  // f ∘ g, or -1.
  int compose(int f, int g) const;

  // g._σ on objects and morphisms: B_s = g A_{σ(g)⁻¹ s}.
  int act_object(Element g, int x) const;
  int act_morphism(Element g, int f) const;

  // Dense form; throws SizeBoundExceeded above `max_morphisms`.
  FinCategory to_fin_category(int max_morphisms = 2048) const;

 private:
  friend AbarCategory build_Abar(const PermCat&, int, std::optional<std::vector<Perm>>);
  explicit AbarCategory(const PermCat& base) : base_(base) {}
  SystemObject twisted(Element g, const SystemObject& x) const;

  int n_ = 0;
  PermCat base_;
  std::vector<Perm> sigma_;
  std::vector<SystemObject> objects_;
  std::map<SystemObject, int> object_index_;
  std::vector<std::vector<int>> comps_;
  std::vector<int> msrc_, mtgt_, ident_;
  std::map<std::vector<int>, int> morphism_index_;  // [src, tgt, comps...]
  std::map<std::pair<int, int>, std::vector<int>> homs_;
};

inline constexpr int kMaxAbarN = 3;
inline constexpr int kMaxAbarBaseObjects = 4;

// All coherent systems on n points and all compatible ⟨α_s⟩. σ defaults to
// the base's norm exponent when it has n points, otherwise trivial.
AbarCategory build_Abar(const PermCat& a, int n, std::optional<std::vector<Perm>> sigma = std::nullopt);

struct AbarFunctor {
  std::vector<int> objects, morphisms;
};
// Ā(φ) for a based map φ: m_+ → n_+ given as φ[0..m] with φ[0] = 0:
// B_u = A_{φ⁻¹ u}, b_{u,v} = a_{φ⁻¹ u, φ⁻¹ v}. Throws DiagramFailure when an
// image is not a coherent system.
AbarFunctor abar_map(const AbarCategory& from, const AbarCategory& to, const std::vector<int>& phi);

struct Certificate {
  nlohmann::json stages;  // stage name ↦ instances checked
  std::size_t eta_components = 0;
  nlohmann::json to_json() const;
};

// δ, ν and η for the base's norm exponent; see the stage names in the
// certificate. Throws DiagramFailure at the first failing square.
Certificate certify_equivalence(const AbarCategory& abar);

}  // namespace transferkit
