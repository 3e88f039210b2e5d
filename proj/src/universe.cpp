#include "transferkit/universe.hpp"

#include <algorithm>
#include <tuple>

#include "transferkit/error.hpp"

namespace transferkit {

std::string Irreducible::label() const {
  switch (kind) {
    case Kind::Trivial: return "trivial";
    case Kind::Sign: return "sign";
    case Kind::Rotation: return "V(" + std::to_string(k) + ")";
    case Kind::Table: return name;
  }
  return "";
}

Irreducible Irreducible::parse(const std::string& text) {
  if (text == "trivial" || text == "R") return trivial();
  if (text == "sign" || text == "sigma") return sign();
  if (text.size() > 3 && text.rfind("V(", 0) == 0 && text.back() == ')') {
    try {
      std::size_t used = 0;
      int k = std::stoi(text.substr(2, text.size() - 3), &used);
      if (used == text.size() - 3) return rotation(k);
    } catch (const std::exception&) {
    }
  }
  throw InputError("unknown irreducible '" + text + "'");
}

bool Irreducible::operator<(const Irreducible& o) const {
  return std::tie(kind, k, name, dims) < std::tie(o.kind, o.k, o.name, o.dims);
}

int fixed_dim(const SubgroupLattice& lat, const Irreducible& v, SubgroupId k) {
  if (k < 0 || k >= lat.size()) throw DescriptorMismatch("subgroup index out of range");
  if (v.kind == Irreducible::Kind::Trivial) return 1;
  if (v.kind == Irreducible::Kind::Table) {
    if (static_cast<int>(v.dims.size()) != lat.size())
      throw DescriptorMismatch("table '" + v.name + "' has " + std::to_string(v.dims.size()) + " entries, lattice has " +
                               std::to_string(lat.size()) + " subgroups");
    return v.dims[k];
  }
  auto n = lat.group().cyclic_order();
  if (!n) throw DescriptorMismatch(v.label() + " needs a builtin cyclic group, got " + lat.group().name());
  int m = lat.order_of(k);
  if (v.kind == Irreducible::Kind::Sign) {
    if (*n % 2) throw DescriptorMismatch("sign representation needs even order, got C_" + std::to_string(*n));
    return (*n / m) % 2 == 0 ? 1 : 0;
  }
  // A generator of C_m rotates V_n(k) by 2πk/m.
  return v.k % m == 0 ? 2 : 0;
}

std::vector<Irreducible> cyclic_nontrivial_irreducibles(int n) {
  std::vector<Irreducible> out;
  if (n % 2 == 0) out.push_back(Irreducible::sign());
  for (int k = 1; 2 * k < n; ++k) out.push_back(Irreducible::rotation(k));
  return out;
}

Universe::Universe(LatticePtr lattice, std::vector<Irreducible> irreducibles)
    : lattice_(std::move(lattice)), irr_(std::move(irreducibles)) {
  std::sort(irr_.begin(), irr_.end());
  irr_.erase(std::unique(irr_.begin(), irr_.end()), irr_.end());
  if (irr_.empty() || irr_.front().kind != Irreducible::Kind::Trivial)
    throw InputError("a universe must contain the trivial representation");
  const auto& lat = *lattice_;
  for (const auto& v : irr_)
    for (int a = 0; a < lat.size(); ++a) {
      int da = fixed_dim(lat, v, a);
      if (da < 0) throw DescriptorMismatch(v.label() + ": negative dimension");
      for (int b = a; b < lat.size(); ++b)
        if (lat.contains(a, b) && fixed_dim(lat, v, b) > da)
          throw DescriptorMismatch(v.label() + ": fixed dimension grows from " + lat.label(a) + " to " + lat.label(b));
    }
}

Universe Universe::trivial_universe(LatticePtr lattice) { return Universe(std::move(lattice), {Irreducible::trivial()}); }

Universe Universe::complete_cyclic(LatticePtr lattice) {
  auto n = lattice->group().cyclic_order();
  if (!n) throw DescriptorMismatch("complete_cyclic needs a builtin cyclic group");
  auto irr = cyclic_nontrivial_irreducibles(*n);
  irr.push_back(Irreducible::trivial());
  return Universe(std::move(lattice), std::move(irr));
}

Universe Universe::regular(LatticePtr lattice) {
  std::vector<int> dims(lattice->size());
  for (int k = 0; k < lattice->size(); ++k) dims[k] = lattice->index_in(k, lattice->top());
  return Universe(lattice, {Irreducible::trivial(), Irreducible::table("regular", std::move(dims))});
}

std::string Universe::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < irr_.size(); ++i) out += (i ? ", " : "") + irr_[i].label();
  return out + "}";
}

std::vector<SubgroupId> realizable_in(const SubgroupLattice& lat, const Irreducible& v, SubgroupId h) {
  // V^K minus the union of the finitely many proper subspaces V^L is nonempty
  // over ℝ exactly when every minimal overgroup L cuts the dimension down.
  std::vector<SubgroupId> out;
  for (SubgroupId k : lat.subgroups_of(h)) {
    int dk = fixed_dim(lat, v, k);
    bool ok = true;
    for (SubgroupId l : lat.minimal_overgroups(k, h))
      if (fixed_dim(lat, v, l) >= dk) ok = false;
    if (ok) out.push_back(k);
  }
  return out;
}

Family realizable_stabilizers(const Universe& u, SubgroupId h) {
  const auto& lat = u.lattice();
  Bitset b(lat.size());
  b[h] = true;
  for (const auto& v : u.irreducibles())
    for (SubgroupId k : realizable_in(lat, v, h)) b[k] = true;
  // Tuples of vectors have intersected stabilizers.
  for (bool grew = true; grew;) {
    grew = false;
    auto cur = bits_of(b);
    for (SubgroupId x : cur)
      for (SubgroupId y : cur) {
        SubgroupId m = lat.meet(x, y);
        if (!b[m]) {
          b[m] = true;
          grew = true;
        }
      }
  }
  return Family(u.lattice_ptr(), h, std::move(b));
}

TransferSystem universe_transfer_system(const Universe& u) {
  const auto& lat = u.lattice();
  Bitset bits(lat.strict_pairs().size());
  for (int h = 0; h < lat.size(); ++h) {
    Family f = realizable_stabilizers(u, h);
    for_each_bit(f.bits(), [&](int k) {
      if (k != h) bits[lat.pair_index(k, h)] = true;
    });
  }
  return TransferSystem(u.lattice_ptr(), std::move(bits));
}

bool is_compatible(const Universe& u, const IndexingSystem& ix) {
  if (u.lattice_ptr() != ix.lattice_ptr()) throw InputError("universe and indexing system use different groups");
  if (!is_disklike(ix.source())) throw NotDiskLike("compatibility is defined for disk-like indexing systems");
  const auto& lat = u.lattice();
  Family f = realizable_stabilizers(u, lat.top());
  for (int k = 0; k < lat.size(); ++k)
    if (f.contains(k) != ix.source().relates(k, lat.top())) return false;
  return true;
}

UniverseLatticeReport universe_lattice(const LatticePtr& lattice, int bound) {
  auto n = lattice->group().cyclic_order();
  if (!n) throw InputError("universe_lattice needs a builtin cyclic group");
  if (*n > bound) throw SearchBoundExceeded("C_" + std::to_string(*n) + " exceeds the cube bound " + std::to_string(bound));
  UniverseLatticeReport rep;
  rep.basis = cyclic_nontrivial_irreducibles(*n);
  const std::uint32_t cube = std::uint32_t{1} << rep.basis.size();
  for (std::uint32_t m = 0; m < cube; ++m) {
    std::vector<Irreducible> irr{Irreducible::trivial()};
    for (std::size_t i = 0; i < rep.basis.size(); ++i)
      if (m >> i & 1) irr.push_back(rep.basis[i]);
    TransferSystem t = universe_transfer_system(Universe(lattice, irr));
    rep.all_valid = rep.all_valid && validate(*lattice, t.pairs()).empty();
    rep.all_disklike = rep.all_disklike && is_disklike(t);
    rep.nodes.push_back({m, std::move(t)});
  }
  rep.preserves_min = rep.nodes.front().system == TransferSystem::trivial(lattice);
  rep.preserves_max = rep.nodes.back().system == TransferSystem::complete(lattice);
  for (std::uint32_t a = 0; a < cube; ++a)
    for (std::uint32_t b = 0; b < cube; ++b) {
      const auto& sa = rep.nodes[a].system;
      const auto& sb = rep.nodes[b].system;
      if ((a & b) == a && !sa.subset_of(sb)) rep.order_preserving = false;
      if (rep.nodes[a | b].system != join(sa, sb)) rep.join_preserving = false;
      if (rep.nodes[a & b].system != meet(sa, sb)) {
        rep.meet_preserving = false;
        if (!rep.meet_failure_witness) rep.meet_failure_witness = {a, b};
      }
      if (a < b && sa == sb) {
        rep.injective = false;
        if (!rep.non_injective_witness) rep.non_injective_witness = {a, b};
      }
    }
  return rep;
}

}  // namespace transferkit
