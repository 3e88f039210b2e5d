#include "transferkit/permcat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "transferkit/error.hpp"

namespace transferkit {

namespace {

constexpr std::size_t kMaxAbarObjects = 200'000;
constexpr std::size_t kMaxAbarMorphisms = 2'000'000;

std::string tuple_string(const std::vector<int>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

std::string system_string(const SystemObject& x) {
  return "A=" + tuple_string(x.A);
}

[[noreturn]] void fail(const std::string& stage, const std::string& detail) {
  throw DiagramFailure(stage + ": " + detail);
}

// Calls f on every tuple of indices with tuple[i] ranging over choices[i].
void for_each_product(const std::vector<std::vector<int>>& choices, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> cur(choices.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == choices.size()) {
      f(cur);
      return;
    }
    for (int c : choices[i]) {
      cur[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
}

int popcount(unsigned s) { return __builtin_popcount(s); }

// Nonempty subsets in order of cardinality, then value.
std::vector<unsigned> subset_order(int n) {
  std::vector<unsigned> out;
  for (unsigned s = 1; s < (1u << n); ++s) out.push_back(s);
  std::stable_sort(out.begin(), out.end(), [](unsigned a, unsigned b) { return popcount(a) < popcount(b); });
  return out;
}

unsigned preimage(const Perm& p, unsigned s) {
  unsigned r = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (s >> p[i] & 1) r |= 1u << i;
  return r;
}

}  // namespace

// ---------------------------------------------------------------- FinCategory

FinCategory::FinCategory(int objects, std::vector<int> source, std::vector<int> target, std::vector<int> identity,
                         std::vector<int> composition)
    : nobj_(objects), src_(std::move(source)), tgt_(std::move(target)), id_(std::move(identity)),
      comp_(std::move(composition)) {
  int m = morphisms();
  if (nobj_ < 0 || tgt_.size() != src_.size() || id_.size() != static_cast<std::size_t>(nobj_) ||
      comp_.size() != static_cast<std::size_t>(m) * m)
    throw InputError("category tables have inconsistent shapes");
  for (int f = 0; f < m; ++f)
    if (src_[f] < 0 || src_[f] >= nobj_ || tgt_[f] < 0 || tgt_[f] >= nobj_)
      throw InputError("morphism " + std::to_string(f) + " has an endpoint out of range");
  for (int x = 0; x < nobj_; ++x)
    if (id_[x] < 0 || id_[x] >= m || src_[id_[x]] != x || tgt_[id_[x]] != x)
      throw InputError("identity of object " + std::to_string(x) + " is not an endomorphism of it");
  for (int v : comp_)
    if (v < -1 || v >= m) throw InputError("composition table leaves the morphisms");
  hom_.assign(static_cast<std::size_t>(nobj_) * nobj_, {});
  for (int f = 0; f < m; ++f) hom_[static_cast<std::size_t>(src_[f]) * nobj_ + tgt_[f]].push_back(f);
  inv_.assign(m, -1);
  for (int f = 0; f < m; ++f)
    for (int g : hom(tgt_[f], src_[f]))
      if (compose(g, f) == id_[src_[f]] && compose(f, g) == id_[tgt_[f]]) {
        inv_[f] = g;
        break;
      }
}

void FinCategory::set_action(std::shared_ptr<const Group> group, std::vector<int> on_objects,
                             std::vector<int> on_morphisms) {
  if (on_objects.size() != static_cast<std::size_t>(group->order()) * nobj_ ||
      on_morphisms.size() != static_cast<std::size_t>(group->order()) * morphisms())
    throw InputError("action tables have the wrong shape");
  group_ = std::move(group);
  act_ob_ = std::move(on_objects);
  act_mor_ = std::move(on_morphisms);
}

void FinCategory::validate() const {
  int m = morphisms();
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) {
      int c = compose(f, g);
      bool composable = tgt_[g] == src_[f];
      if (composable != (c >= 0))
        fail("category", "composite of " + std::to_string(f) + " after " + std::to_string(g) + " is misdefined");
      if (c >= 0 && (src_[c] != src_[g] || tgt_[c] != tgt_[f]))
        fail("category", "composite of " + std::to_string(f) + " after " + std::to_string(g) + " has wrong endpoints");
    }
  for (int f = 0; f < m; ++f)
    if (compose(id_[tgt_[f]], f) != f || compose(f, id_[src_[f]]) != f)
      fail("category", "identities are not units for morphism " + std::to_string(f));
  // h: a → b, g: b → y, f: y → z
  for (int h = 0; h < m; ++h)
    for (int y = 0; y < nobj_; ++y)
      for (int g : hom(tgt_[h], y))
        for (int z = 0; z < nobj_; ++z)
          for (int f : hom(y, z))
            if (compose(compose(f, g), h) != compose(f, compose(g, h)))
              fail("category", "composition is not associative at " + tuple_string({f, g, h}));
  if (!has_action()) return;
  const Group& G = *group_;
  for (int a = 0; a < G.order(); ++a) {
    for (int x = 0; x < nobj_; ++x)
      if (act_mor_[static_cast<std::size_t>(a) * m + id_[x]] != id_[act_object(a, x)])
        fail("G-action", "does not preserve identities");
    for (int f = 0; f < m; ++f) {
      int af = act_morphism(a, f);
      if (af < 0 || af >= m || src_[af] != act_object(a, src_[f]) || tgt_[af] != act_object(a, tgt_[f]))
        fail("G-action", "does not commute with source and target");
    }
    for (int f = 0; f < m; ++f)
      for (int g = 0; g < m; ++g) {
        int c = compose(f, g);
        if (c >= 0 && act_morphism(a, c) != compose(act_morphism(a, f), act_morphism(a, g)))
          fail("G-action", "does not commute with composition");
      }
    for (int b = 0; b < G.order(); ++b) {
      int ab = G.mul(a, b);
      for (int x = 0; x < nobj_; ++x)
        if (act_object(ab, x) != act_object(a, act_object(b, x))) fail("G-action", "is not a homomorphism on objects");
      for (int f = 0; f < m; ++f)
        if (act_morphism(ab, f) != act_morphism(a, act_morphism(b, f)))
          fail("G-action", "is not a homomorphism on morphisms");
    }
  }
  for (int x = 0; x < nobj_; ++x)
    if (act_object(G.identity(), x) != x) fail("G-action", "identity acts nontrivially");
}

// -------------------------------------------------------------------- PermCat

PermCat::PermCat(std::string name, LatticePtr lattice, FinCategory cat, int unit, std::vector<int> tensor_objects,
                 std::vector<int> tensor_morphisms, std::vector<int> beta, std::optional<Norms> norms)
    : name_(std::move(name)), lattice_(std::move(lattice)), cat_(std::move(cat)), unit_(unit),
      tob_(std::move(tensor_objects)), tmor_(std::move(tensor_morphisms)), beta_(std::move(beta)),
      norms_(std::move(norms)) {
  std::size_t no = cat_.objects(), nm = cat_.morphisms();
  if (unit_ < 0 || unit_ >= cat_.objects()) throw InputError("unit object out of range");
  if (tob_.size() != no * no || beta_.size() != no * no || tmor_.size() != nm * nm)
    throw InputError("tensor tables have the wrong shape");
  for (int v : tob_)
    if (v < -1 || v >= static_cast<int>(no)) throw InputError("tensor of objects leaves the category");
  for (int v : tmor_)
    if (v < -1 || v >= static_cast<int>(nm)) throw InputError("tensor of morphisms leaves the category");
  for (int v : beta_)
    if (v < -1 || v >= static_cast<int>(nm)) throw InputError("twist leaves the category");
  if (!cat_.has_action()) {
    std::vector<int> ob, mor;
    for (int g = 0; g < lattice_->group().order(); ++g) {
      for (std::size_t x = 0; x < no; ++x) ob.push_back(static_cast<int>(x));
      for (std::size_t f = 0; f < nm; ++f) mor.push_back(static_cast<int>(f));
    }
    cat_.set_action(lattice_->group_ptr(), ob, mor);
  } else if (cat_.group().order() != lattice_->group().order()) {
    throw InputError("category action and lattice use different groups");
  }
  if (norms_) {
    if (norms_->n < 0 || norms_->sigma.size() != static_cast<std::size_t>(lattice_->group().order()))
      throw InputError("norm exponent needs one permutation per group element");
    const Group& g = lattice_->group();
    for (Element a = 0; a < g.order(); ++a) {
      Perm p = norms_->sigma[a];
      if (static_cast<int>(p.size()) != norms_->n) throw InputError("exponent permutation has the wrong degree");
      std::sort(p.begin(), p.end());
      for (int i = 0; i < norms_->n; ++i)
        if (p[i] != i) throw InputError("exponent map is not a permutation");
    }
    for (Element a = 0; a < g.order(); ++a)
      for (Element b = 0; b < g.order(); ++b)
        for (int i = 0; i < norms_->n; ++i)
          if (norms_->sigma[g.mul(a, b)][i] != norms_->sigma[a][norms_->sigma[b][i]])
            throw InputError("exponent σ is not a homomorphism");
  }
}

int PermCat::sum(const std::vector<int>& objs) const {
  int acc = unit_;
  for (int o : objs) {
    acc = tensor(acc, o);
    if (acc < 0) return -1;
  }
  return acc;
}

int PermCat::sum_morphisms(const std::vector<int>& mors) const {
  int acc = cat_.identity(unit_);
  for (int f : mors) {
    acc = tensor_morphism(acc, f);
    if (acc < 0) return -1;
  }
  return acc;
}

int PermCat::reorder(const std::vector<int>& objs, const Perm& rho) const {
  std::size_t n = objs.size();
  int total = sum(objs);
  if (total < 0) return -1;
  std::vector<int> target_pos(n);
  for (std::size_t i = 0; i < n; ++i) target_pos[rho[i]] = static_cast<int>(i);
  std::vector<int> cur(n);
  std::iota(cur.begin(), cur.end(), 0);
  int f = cat_.identity(total);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (target_pos[cur[k]] < target_pos[cur[k + 1]]) continue;
      std::vector<int> pre, post;
      for (std::size_t i = 0; i < k; ++i) pre.push_back(objs[cur[i]]);
      for (std::size_t i = k + 2; i < n; ++i) post.push_back(objs[cur[i]]);
      int b = beta(objs[cur[k]], objs[cur[k + 1]]);
      int p = sum(pre), q = sum(post);
      if (b < 0 || p < 0 || q < 0) return -1;
      int step = tensor_morphism(tensor_morphism(cat_.identity(p), b), cat_.identity(q));
      if (step < 0) return -1;
      f = cat_.compose(step, f);
      if (f < 0) return -1;
      std::swap(cur[k], cur[k + 1]);
      changed = true;
    }
  }
  return f;
}

int PermCat::norm_object(const std::vector<int>& t) const {
  auto it = norms_->objects.find(t);
  return it == norms_->objects.end() ? -1 : it->second;
}

int PermCat::norm_morphism(const std::vector<int>& t) const {
  auto it = norms_->morphisms.find(t);
  return it == norms_->morphisms.end() ? -1 : it->second;
}

int PermCat::untwistor(const std::vector<int>& t) const {
  auto it = norms_->untwistors.find(t);
  return it == norms_->untwistors.end() ? -1 : it->second;
}

std::vector<int> PermCat::twist_objects(Element h, const std::vector<int>& t) const {
  std::vector<int> out(t.size());
  const Perm& s = norms_->sigma[h];
  for (std::size_t j = 0; j < t.size(); ++j) out[s[j]] = act_object(h, t[j]);
  return out;
}

std::vector<int> PermCat::twist_morphisms(Element h, const std::vector<int>& t) const {
  std::vector<int> out(t.size());
  const Perm& s = norms_->sigma[h];
  for (std::size_t j = 0; j < t.size(); ++j) out[s[j]] = act_morphism(h, t[j]);
  return out;
}

std::vector<std::vector<int>> PermCat::tuples(int n) const {
  std::vector<std::vector<int>> choices(n), out;
  for (auto& c : choices) {
    c.resize(cat_.objects());
    std::iota(c.begin(), c.end(), 0);
  }
  for_each_product(choices, [&](const std::vector<int>& t) {
    if (sum(t) >= 0) out.push_back(t);
  });
  return out;
}

nlohmann::json PermCat::validate() const {
  nlohmann::json counts;
  cat_.validate();
  counts["category"] = cat_.morphisms();
  const int no = cat_.objects(), nm = cat_.morphisms();
  auto id = [&](int x) { return cat_.identity(x); };
  std::size_t c = 0;

  // P1
  for (int a = 0; a < no; ++a, ++c)
    if (tensor(unit_, a) != a || tensor(a, unit_) != a) fail("P1 unitality", "unit does not fix object " + std::to_string(a));
  for (int f = 0; f < nm; ++f, ++c)
    if (tensor_morphism(id(unit_), f) != f || tensor_morphism(f, id(unit_)) != f)
      fail("P1 unitality", "unit does not fix morphism " + std::to_string(f));
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g, ++c) {
      int t = tensor_morphism(f, g);
      int s = tensor(cat_.source(f), cat_.source(g)), e = tensor(cat_.target(f), cat_.target(g));
      if ((t >= 0) != (s >= 0 && e >= 0))
        fail("P1 functoriality", "tensor of morphisms " + tuple_string({f, g}) + " has the wrong domain");
      if (t >= 0 && (cat_.source(t) != s || cat_.target(t) != e))
        fail("P1 functoriality", "tensor of morphisms " + tuple_string({f, g}) + " has wrong endpoints");
    }
  for (int a = 0; a < no; ++a)
    for (int b = 0; b < no; ++b, ++c)
      if (tensor(a, b) >= 0 && tensor_morphism(id(a), id(b)) != id(tensor(a, b)))
        fail("P1 functoriality", "tensor of identities " + tuple_string({a, b}) + " is not an identity");
  for (int f2 = 0; f2 < nm; ++f2)
    for (int g2 = 0; g2 < nm; ++g2) {
      int inner = tensor_morphism(f2, g2);
      if (inner < 0) continue;
      for (int y1 = 0; y1 < no; ++y1)
        for (int f1 : cat_.hom(cat_.target(f2), y1))
          for (int y2 = 0; y2 < no; ++y2)
            for (int g1 : cat_.hom(cat_.target(g2), y2)) {
              int outer = tensor_morphism(f1, g1);
              if (outer < 0) continue;
              ++c;
              if (tensor_morphism(cat_.compose(f1, f2), cat_.compose(g1, g2)) != cat_.compose(outer, inner))
                fail("P1 functoriality", "interchange fails at " + tuple_string({f1, f2, g1, g2}));
            }
    }
  for (int a = 0; a < no; ++a)
    for (int b = 0; b < no; ++b)
      for (int d = 0; d < no; ++d, ++c) {
        int l = tensor(a, b) < 0 ? -1 : tensor(tensor(a, b), d);
        int r = tensor(b, d) < 0 ? -1 : tensor(a, tensor(b, d));
        if (l != r) fail("P1 associativity", "objects " + tuple_string({a, b, d}));
      }
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g)
      for (int h = 0; h < nm; ++h, ++c) {
        int l = tensor_morphism(f, g) < 0 ? -1 : tensor_morphism(tensor_morphism(f, g), h);
        int r = tensor_morphism(g, h) < 0 ? -1 : tensor_morphism(f, tensor_morphism(g, h));
        if (l != r) fail("P1 associativity", "morphisms " + tuple_string({f, g, h}));
      }
  counts["P1"] = c;

  // P2
  c = 0;
  for (int a = 0; a < no; ++a)
    for (int b = 0; b < no; ++b, ++c) {
      int ab = tensor(a, b), t = beta(a, b);
      if ((ab >= 0) != (t >= 0)) fail("P2 twist", "β" + tuple_string({a, b}) + " has the wrong domain");
      if (ab < 0) continue;
      if (cat_.source(t) != ab || cat_.target(t) != tensor(b, a))
        fail("P2 twist", "β" + tuple_string({a, b}) + " has wrong endpoints");
      if (cat_.compose(beta(b, a), t) != id(ab)) fail("P2 symmetry", "β∘β is not the identity at " + tuple_string({a, b}));
    }
  for (int a = 0; a < no; ++a, ++c)
    if (beta(a, unit_) != id(a) || beta(unit_, a) != id(a))
      fail("P2 unit", "twist with the unit is not the identity at " + std::to_string(a));
  for (int a = 0; a < no; ++a)
    for (int b = 0; b < no; ++b)
      for (int d = 0; d < no; ++d) {
        if (tensor(a, b) < 0 || tensor(tensor(a, b), d) < 0) continue;
        ++c;
        int lhs = beta(a, tensor(b, d));
        int rhs = cat_.compose(tensor_morphism(id(b), beta(a, d)), tensor_morphism(beta(a, b), id(d)));
        if (lhs != rhs) fail("P2 hexagon", "objects " + tuple_string({a, b, d}));
      }
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      int fg = tensor_morphism(f, g);
      if (fg < 0) continue;
      ++c;
      int lhs = cat_.compose(beta(cat_.target(f), cat_.target(g)), fg);
      int rhs = cat_.compose(tensor_morphism(g, f), beta(cat_.source(f), cat_.source(g)));
      if (lhs != rhs) fail("P2 naturality", "morphisms " + tuple_string({f, g}));
    }
  counts["P2"] = c;

  // Strict G-action by symmetric monoidal functors.
  c = 0;
  const Group& G = lattice_->group();
  for (Element g = 0; g < G.order(); ++g) {
    if (act_object(g, unit_) != unit_) fail("G-action", "moves the unit");
    for (int a = 0; a < no; ++a)
      for (int b = 0; b < no; ++b) {
        if (tensor(a, b) < 0) continue;
        ++c;
        if (act_object(g, tensor(a, b)) != tensor(act_object(g, a), act_object(g, b)))
          fail("G-action", "does not preserve ⊕ on objects " + tuple_string({a, b}));
        if (act_morphism(g, beta(a, b)) != beta(act_object(g, a), act_object(g, b)))
          fail("G-action", "does not preserve β at " + tuple_string({a, b}));
      }
    for (int f = 0; f < nm; ++f)
      for (int h = 0; h < nm; ++h) {
        if (tensor_morphism(f, h) < 0) continue;
        ++c;
        if (act_morphism(g, tensor_morphism(f, h)) != tensor_morphism(act_morphism(g, f), act_morphism(g, h)))
          fail("G-action", "does not preserve ⊕ on morphisms " + tuple_string({f, h}));
      }
  }
  counts["G-action"] = c;
  if (!norms_) return counts;

  // P3: ⊕_T is an equivariant functor and v_T a natural isomorphism satisfying
  // the twisted equivariance square.
  c = 0;
  const int n = norms_->n;
  std::vector<std::vector<int>> dom = tuples(n);
  for (const auto& t : dom) {
    ++c;
    int o = norm_object(t), v = untwistor(t);
    if (o < 0) fail("P3 norm", "⊕_T undefined on " + tuple_string(t));
    if (v < 0 || cat_.source(v) != o || cat_.target(v) != sum(t) || !cat_.is_iso(v))
      fail("P3 untwistor", "v_T" + tuple_string(t) + " is not an isomorphism ⊕_T → ⊕_n");
    if (norm_morphism([&] {
          std::vector<int> ids;
          for (int x : t) ids.push_back(id(x));
          return ids;
        }()) != id(o))
      fail("P3 norm", "⊕_T does not preserve identities at " + tuple_string(t));
  }
  std::vector<std::vector<int>> mtuples;
  for (const auto& s : dom)
    for (const auto& e : dom) {
      std::vector<std::vector<int>> choices(n);
      for (int i = 0; i < n; ++i) choices[i] = cat_.hom(s[i], e[i]);
      for_each_product(choices, [&](const std::vector<int>& f) { mtuples.push_back(f); });
    }
  auto sources = [&](const std::vector<int>& f) {
    std::vector<int> r;
    for (int x : f) r.push_back(cat_.source(x));
    return r;
  };
  auto targets = [&](const std::vector<int>& f) {
    std::vector<int> r;
    for (int x : f) r.push_back(cat_.target(x));
    return r;
  };
  for (const auto& f : mtuples) {
    ++c;
    int nf = norm_morphism(f);
    std::vector<int> s = sources(f), e = targets(f);
    if (nf < 0 || cat_.source(nf) != norm_object(s) || cat_.target(nf) != norm_object(e))
      fail("P3 norm", "⊕_T of morphisms " + tuple_string(f) + " is undefined or has wrong endpoints");
    if (cat_.compose(untwistor(e), nf) != cat_.compose(sum_morphisms(f), untwistor(s)))
      fail("P3 untwistor naturality", "morphisms " + tuple_string(f));
  }
  std::map<std::vector<int>, std::vector<const std::vector<int>*>> by_source;
  for (const auto& f : mtuples) by_source[sources(f)].push_back(&f);
  for (const auto& g : mtuples)
    for (const auto* f : by_source[targets(g)]) {
      ++c;
      std::vector<int> fg(n);
      for (int i = 0; i < n; ++i) fg[i] = cat_.compose((*f)[i], g[i]);
      if (norm_morphism(fg) != cat_.compose(norm_morphism(*f), norm_morphism(g)))
        fail("P3 norm", "⊕_T does not preserve composition at " + tuple_string(*f) + " after " + tuple_string(g));
    }
  for (Element h = 0; h < G.order(); ++h) {
    for (const auto& t : dom) {
      ++c;
      std::vector<int> ht = twist_objects(h, t);
      if (act_object(h, norm_object(t)) != norm_object(ht))
        fail("P3 twisted equivariance", "objects " + tuple_string(t) + " under " + G.element_label(h));
      int rhs = cat_.compose(reorder(ht, norms_->sigma[h]), untwistor(ht));
      if (act_morphism(h, untwistor(t)) != rhs)
        fail("P3 twisted equivariance", "untwistor at " + tuple_string(t) + " under " + G.element_label(h));
    }
    for (const auto& f : mtuples) {
      ++c;
      if (act_morphism(h, norm_morphism(f)) != norm_morphism(twist_morphisms(h, f)))
        fail("P3 twisted equivariance", "morphisms " + tuple_string(f) + " under " + G.element_label(h));
    }
  }
  counts["P3"] = c;

  // P4: v_T is the identity on unit-padded tuples.
  c = 0;
  std::vector<int> units(n, unit_);
  ++c;
  if (norm_object(units) != unit_ || untwistor(units) != id(unit_))
    fail("P4 unit-normalization", "v_T" + tuple_string(units) + " is not the identity of the unit");
  for (int i = 0; i < n; ++i)
    for (int x = 0; x < no; ++x) {
      std::vector<int> t = units;
      t[i] = x;
      ++c;
      if (norm_object(t) != x || untwistor(t) != id(x))
        fail("P4 unit-normalization", "v_T" + tuple_string(t) + " is not the identity");
    }
  counts["P4"] = c;
  return counts;
}

// ---------------------------------------------------------------------- seeds

namespace {

Norms sum_norms(const PermCat& plain, int n, std::vector<Perm> sigma) {
  Norms nm;
  nm.n = n;
  nm.sigma = std::move(sigma);
  const FinCategory& cat = plain.cat();
  std::vector<std::vector<int>> dom = plain.tuples(n);
  for (const auto& t : dom) {
    int s = plain.sum(t);
    nm.objects[t] = s;
    nm.untwistors[t] = cat.identity(s);
  }
  for (const auto& s : dom)
    for (const auto& e : dom) {
      std::vector<std::vector<int>> choices(n);
      for (int i = 0; i < n; ++i) choices[i] = cat.hom(s[i], e[i]);
      for_each_product(choices, [&](const std::vector<int>& f) { nm.morphisms[f] = plain.sum_morphisms(f); });
    }
  return nm;
}

std::vector<Perm> trivial_sigma(const Group& g, int n) {
  Perm id(n);
  std::iota(id.begin(), id.end(), 0);
  return std::vector<Perm>(g.order(), id);
}

}  // namespace

PermCat discrete_monoid_seed(const AbelianGGroup& m, const GSet* t) {
  const LatticePtr& lat = m.lattice_ptr();
  const Group& g = lat->group();
  GSet fallback = GSet::trivial(lat, lat->top(), 2);
  const GSet& tt = t ? *t : fallback;
  if (tt.lattice_ptr() != lat || tt.acting() != lat->top() || tt.based())
    throw InputError("the norm exponent must be an unbased G-set");
  int k = m.order();
  std::vector<int> src(k), ident(k), comp(static_cast<std::size_t>(k) * k, -1), tob, beta;
  std::iota(src.begin(), src.end(), 0);
  std::iota(ident.begin(), ident.end(), 0);
  for (int a = 0; a < k; ++a) comp[static_cast<std::size_t>(a) * k + a] = a;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) tob.push_back(m.add(a, b));
  FinCategory cat(k, src, src, ident, comp);
  std::vector<int> act;
  for (Element x = 0; x < g.order(); ++x)
    for (int a = 0; a < k; ++a) act.push_back(m.act(x, a));
  cat.set_action(lat->group_ptr(), act, act);
  std::string name = "discrete " + m.name();
  PermCat plain(name, lat, cat, 0, tob, tob, tob);
  std::vector<Perm> sigma;
  for (Element x = 0; x < g.order(); ++x) sigma.push_back(tt.permutation(x));
  return PermCat(name, lat, cat, 0, tob, tob, tob, sum_norms(plain, tt.size(), sigma));
}

namespace {

struct SkeletalParts {
  FinCategory cat;
  std::vector<int> tob, tmor, beta;
  std::vector<Perm> perms;
  std::map<Perm, int> index;
};

SkeletalParts skeletal_parts(int max) {
  SkeletalParts p;
  std::vector<int> src, ident;
  for (int k = 0; k <= max; ++k) {
    Perm q(k);
    std::iota(q.begin(), q.end(), 0);
    ident.push_back(static_cast<int>(p.perms.size()));
    do {
      p.index[q] = static_cast<int>(p.perms.size());
      p.perms.push_back(q);
      src.push_back(k);
    } while (std::next_permutation(q.begin(), q.end()));
  }
  int nm = static_cast<int>(p.perms.size()), no = max + 1;
  std::vector<int> comp(static_cast<std::size_t>(nm) * nm, -1);
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      if (src[f] != src[g]) continue;
      Perm r(src[f]);
      for (int i = 0; i < src[f]; ++i) r[i] = p.perms[f][p.perms[g][i]];
      comp[static_cast<std::size_t>(f) * nm + g] = p.index.at(r);
    }
  p.cat = FinCategory(no, src, src, ident, comp);
  for (int a = 0; a < no; ++a)
    for (int b = 0; b < no; ++b) {
      p.tob.push_back(a + b <= max ? a + b : -1);
      if (a + b > max) {
        p.beta.push_back(-1);
        continue;
      }
      Perm r(a + b);
      for (int i = 0; i < a; ++i) r[i] = i + b;
      for (int j = 0; j < b; ++j) r[a + j] = j;
      p.beta.push_back(p.index.at(r));
    }
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      int a = src[f], b = src[g];
      if (a + b > max) {
        p.tmor.push_back(-1);
        continue;
      }
      Perm r(a + b);
      for (int i = 0; i < a; ++i) r[i] = p.perms[f][i];
      for (int j = 0; j < b; ++j) r[a + j] = a + p.perms[g][j];
      p.tmor.push_back(p.index.at(r));
    }
  return p;
}

}  // namespace

PermCat skeletal_sets_seed(const LatticePtr& lattice, int n, int max) {
  if (max < 0 || max > 5) throw InputError("skeletal seed supports sets of size at most 5");
  SkeletalParts p = skeletal_parts(max);
  std::string name = "skeletal finite sets <= " + std::to_string(max);
  PermCat plain(name, lattice, p.cat, 0, p.tob, p.tmor, p.beta);
  return PermCat(name, lattice, p.cat, 0, p.tob, p.tmor, p.beta,
                 sum_norms(plain, n, trivial_sigma(lattice->group(), n)));
}

PermCat broken_untwistor_seed(const LatticePtr& lattice) {
  SkeletalParts p = skeletal_parts(3);
  PermCat plain("broken untwistor", lattice, p.cat, 0, p.tob, p.tmor, p.beta);
  Norms nm = sum_norms(plain, 2, trivial_sigma(lattice->group(), 2));
  nm.untwistors[{0, 2}] = p.index.at(Perm{1, 0});
  return PermCat("broken untwistor", lattice, p.cat, 0, p.tob, p.tmor, p.beta, nm);
}

// ----------------------------------------------------------------------- JSON

nlohmann::json permcat_to_json(const PermCat& a) {
  using nlohmann::json;
  const FinCategory& c = a.cat();
  const Group& g = a.lattice().group();
  json j;
  j["name"] = a.name();
  j["group"] = g.name();
  j["objects"] = c.objects();
  j["unit"] = a.unit();
  json mors = json::array(), ids = json::array(), comp = json::array();
  for (int f = 0; f < c.morphisms(); ++f) mors.push_back({c.source(f), c.target(f)});
  for (int x = 0; x < c.objects(); ++x) ids.push_back(c.identity(x));
  for (int f = 0; f < c.morphisms(); ++f)
    for (int h = 0; h < c.morphisms(); ++h)
      if (c.compose(f, h) >= 0) comp.push_back({f, h, c.compose(f, h)});
  j["morphisms"] = mors;
  j["identity"] = ids;
  j["compose"] = comp;
  json to = json::array(), tm = json::array(), be = json::array();
  for (int x = 0; x < c.objects(); ++x)
    for (int y = 0; y < c.objects(); ++y)
      if (a.tensor(x, y) >= 0) {
        to.push_back({x, y, a.tensor(x, y)});
        be.push_back({x, y, a.beta(x, y)});
      }
  for (int f = 0; f < c.morphisms(); ++f)
    for (int h = 0; h < c.morphisms(); ++h)
      if (a.tensor_morphism(f, h) >= 0) tm.push_back({f, h, a.tensor_morphism(f, h)});
  j["tensor_objects"] = to;
  j["tensor_morphisms"] = tm;
  j["beta"] = be;
  json ao = json::array(), am = json::array();
  for (Element x = 0; x < g.order(); ++x) {
    json ro = json::array(), rm = json::array();
    for (int o = 0; o < c.objects(); ++o) ro.push_back(c.act_object(x, o));
    for (int f = 0; f < c.morphisms(); ++f) rm.push_back(c.act_morphism(x, f));
    ao.push_back(ro);
    am.push_back(rm);
  }
  j["action"] = {{"objects", ao}, {"morphisms", am}};
  if (a.has_norms()) {
    const Norms& nm = a.norms();
    auto table = [](const std::map<std::vector<int>, int>& m) {
      json r = json::array();
      for (const auto& [k, v] : m) r.push_back({k, v});
      return r;
    };
    j["norms"] = {{"n", nm.n},
                  {"sigma", nm.sigma},
                  {"objects", table(nm.objects)},
                  {"morphisms", table(nm.morphisms)},
                  {"untwistors", table(nm.untwistors)}};
  }
  return j;
}

PermCat permcat_from_json(const nlohmann::json& j) {
  try {
    LatticePtr lat = lattice_of(j.at("group").get<std::string>());
    int no = j.at("objects").get<int>();
    const auto& mors = j.at("morphisms");
    int nm = static_cast<int>(mors.size());
    if (no < 0 || no > 64 || nm > 4096) throw InputError("seed is too large");
    std::vector<int> src, tgt;
    for (const auto& m : mors) {
      src.push_back(m.at(0).get<int>());
      tgt.push_back(m.at(1).get<int>());
    }
    std::vector<int> ids = j.at("identity").get<std::vector<int>>();
    std::vector<int> comp(static_cast<std::size_t>(nm) * nm, -1);
    auto checked = [](int v, int bound, const char* what) {
      if (v < 0 || v >= bound) throw InputError(std::string(what) + " index out of range");
      return v;
    };
    for (const auto& e : j.at("compose"))
      comp[static_cast<std::size_t>(checked(e.at(0), nm, "morphism")) * nm + checked(e.at(1), nm, "morphism")] =
          checked(e.at(2), nm, "morphism");
    FinCategory cat(no, src, tgt, ids, comp);
    std::vector<int> tob(static_cast<std::size_t>(no) * no, -1), beta(tob.size(), -1),
        tmor(static_cast<std::size_t>(nm) * nm, -1);
    for (const auto& e : j.at("tensor_objects"))
      tob[static_cast<std::size_t>(checked(e.at(0), no, "object")) * no + checked(e.at(1), no, "object")] =
          checked(e.at(2), no, "object");
    for (const auto& e : j.at("beta"))
      beta[static_cast<std::size_t>(checked(e.at(0), no, "object")) * no + checked(e.at(1), no, "object")] =
          checked(e.at(2), nm, "morphism");
    for (const auto& e : j.at("tensor_morphisms"))
      tmor[static_cast<std::size_t>(checked(e.at(0), nm, "morphism")) * nm + checked(e.at(1), nm, "morphism")] =
          checked(e.at(2), nm, "morphism");
    if (j.contains("action")) {
      std::vector<int> ao, am;
      for (const auto& r : j["action"].at("objects"))
        for (int v : r.get<std::vector<int>>()) ao.push_back(checked(v, no, "object"));
      for (const auto& r : j["action"].at("morphisms"))
        for (int v : r.get<std::vector<int>>()) am.push_back(checked(v, nm, "morphism"));
      cat.set_action(lat->group_ptr(), ao, am);
    }
    std::optional<Norms> norms;
    if (j.contains("norms")) {
      const auto& jn = j["norms"];
      Norms n;
      n.n = jn.at("n").get<int>();
      if (n.n < 0 || n.n > kMaxAbarN) throw InputError("norm exponent is too large");
      n.sigma = jn.at("sigma").get<std::vector<Perm>>();
      auto load = [&](const char* key, std::map<std::vector<int>, int>& out) {
        for (const auto& e : jn.at(key)) out[e.at(0).get<std::vector<int>>()] = e.at(1).get<int>();
      };
      load("objects", n.objects);
      load("morphisms", n.morphisms);
      load("untwistors", n.untwistors);
      norms = std::move(n);
    }
    return PermCat(j.value("name", std::string("seed")), lat, std::move(cat), j.at("unit").get<int>(), tob, tmor,
                   beta, std::move(norms));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed permutative category: ") + e.what());
  }
}

// ------------------------------------------------------------------------ Ā_n

const std::vector<int>& AbarCategory::hom(int x, int y) const {
  static const std::vector<int> none;
  auto it = homs_.find({x, y});
  return it == homs_.end() ? none : it->second;
}

int AbarCategory::find_object(const SystemObject& x) const {
  auto it = object_index_.find(x);
  return it == object_index_.end() ? -1 : it->second;
}

int AbarCategory::find_morphism(int src, int tgt, const std::vector<int>& comps) const {
  std::vector<int> key{src, tgt};
  key.insert(key.end(), comps.begin(), comps.end());
  auto it = morphism_index_.find(key);
  return it == morphism_index_.end() ? -1 : it->second;
}

int AbarCategory::compose(int f, int g) const {
  if (msrc_[f] != mtgt_[g]) return -1;
  std::vector<int> c(comps_[f].size());
  for (std::size_t s = 0; s < c.size(); ++s) c[s] = base_.cat().compose(comps_[f][s], comps_[g][s]);
  return find_morphism(msrc_[g], mtgt_[f], c);
}

SystemObject AbarCategory::twisted(Element g, const SystemObject& x) const {
  unsigned N = 1u << n_;
  const Perm& p = sigma_[g];
  SystemObject y{std::vector<int>(N), std::vector<int>(N * N, -1)};
  for (unsigned s = 0; s < N; ++s) y.A[s] = base_.act_object(g, x.A[preimage(p, s)]);
  for (unsigned s = 0; s < N; ++s)
    for (unsigned t = 0; t < N; ++t)
      if (!(s & t)) y.a[s * N + t] = base_.act_morphism(g, x.a[preimage(p, s) * N + preimage(p, t)]);
  return y;
}

int AbarCategory::act_object(Element g, int x) const {
  int r = find_object(twisted(g, objects_[x]));
  if (r < 0) fail("twisted action", "image of " + system_string(objects_[x]) + " is not a coherent system");
  return r;
}

int AbarCategory::act_morphism(Element g, int f) const {
  unsigned N = 1u << n_;
  std::vector<int> c(N);
  for (unsigned s = 0; s < N; ++s) c[s] = base_.act_morphism(g, comps_[f][preimage(sigma_[g], s)]);
  int r = find_morphism(act_object(g, msrc_[f]), act_object(g, mtgt_[f]), c);
  if (r < 0) fail("twisted action", "image of morphism " + std::to_string(f) + " is not compatible");
  return r;
}

FinCategory AbarCategory::to_fin_category(int max_morphisms) const {
  int m = morphism_count();
  if (m > max_morphisms) throw SizeBoundExceeded("Ā has " + std::to_string(m) + " morphisms");
  std::vector<int> comp(static_cast<std::size_t>(m) * m, -1);
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) comp[static_cast<std::size_t>(f) * m + g] = compose(f, g);
  FinCategory cat(object_count(), msrc_, mtgt_, ident_, comp);
  const Group& G = base_.lattice().group();
  std::vector<int> ao, am;
  for (Element g = 0; g < G.order(); ++g) {
    for (int x = 0; x < object_count(); ++x) ao.push_back(act_object(g, x));
    for (int f = 0; f < m; ++f) am.push_back(act_morphism(g, f));
  }
  cat.set_action(base_.lattice().group_ptr(), ao, am);
  return cat;
}

AbarCategory build_Abar(const PermCat& base, int n, std::optional<std::vector<Perm>> sigma) {
  if (n < 0 || n > kMaxAbarN) throw SizeBoundExceeded("Ā_n is limited to n <= " + std::to_string(kMaxAbarN));
  if (base.cat().objects() > kMaxAbarBaseObjects)
    throw SizeBoundExceeded("Ā_n needs at most " + std::to_string(kMaxAbarBaseObjects) + " base objects");
  AbarCategory out(base);
  out.n_ = n;
  const Group& G = base.lattice().group();
  if (sigma) {
    if (sigma->size() != static_cast<std::size_t>(G.order())) throw InputError("σ needs one permutation per element");
    out.sigma_ = *sigma;
  } else if (base.has_norms() && base.norms().n == n) {
    out.sigma_ = base.norms().sigma;
  } else {
    out.sigma_ = trivial_sigma(G, n);
  }
  const FinCategory& c = base.cat();
  const unsigned N = 1u << n;
  const int no = c.objects();
  std::vector<std::vector<int>> isos(static_cast<std::size_t>(no) * no);
  for (int x = 0; x < no; ++x)
    for (int y = 0; y < no; ++y)
      for (int f : c.hom(x, y))
        if (c.is_iso(f)) isos[static_cast<std::size_t>(x) * no + y].push_back(f);

  std::vector<unsigned> order = subset_order(n);
  SystemObject cur{std::vector<int>(N, -1), std::vector<int>(N * N, -1)};
  cur.A[0] = base.unit();
  cur.a[0] = c.identity(base.unit());

  auto associative_on = [&](unsigned s) {
    for (unsigned r = s; r; r = (r - 1) & s)
      for (unsigned rest = s ^ r, p = rest; p; p = (p - 1) & rest) {
        unsigned q = rest ^ p;
        if (!q) continue;
        int lhs = c.compose(cur.a[(r | p) * N + q], base.tensor_morphism(cur.a[r * N + p], c.identity(cur.A[q])));
        int rhs = c.compose(cur.a[r * N + (p | q)], base.tensor_morphism(c.identity(cur.A[r]), cur.a[p * N + q]));
        if (lhs < 0 || lhs != rhs) return false;
      }
    return true;
  };

  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == order.size()) {
      if (out.objects_.size() >= kMaxAbarObjects) throw SizeBoundExceeded("Ā_n has too many objects");
      out.objects_.push_back(cur);
      return;
    }
    unsigned s = order[idx];
    std::vector<unsigned> decomps;
    for (unsigned s1 = (s - 1) & s; s1; s1 = (s1 - 1) & s)
      if (s1 < (s ^ s1)) decomps.push_back(s1);
    std::sort(decomps.begin(), decomps.end());
    for (int o = 0; o < no; ++o) {
      cur.A[s] = o;
      cur.a[s * N] = cur.a[s] = c.identity(o);
      std::function<void(std::size_t)> choose = [&](std::size_t d) {
        if (d == decomps.size()) {
          if (associative_on(s)) rec(idx + 1);
          return;
        }
        unsigned s1 = decomps[d], s2 = s ^ s1;
        int src = base.tensor(cur.A[s1], cur.A[s2]);
        if (src < 0) return;
        for (int f : isos[static_cast<std::size_t>(src) * no + o]) {
          cur.a[s1 * N + s2] = f;
          cur.a[s2 * N + s1] = c.compose(f, base.beta(cur.A[s2], cur.A[s1]));
          choose(d + 1);
        }
        cur.a[s1 * N + s2] = cur.a[s2 * N + s1] = -1;
      };
      choose(0);
    }
    cur.A[s] = -1;
    cur.a[s * N] = cur.a[s] = -1;
  };
  rec(0);
  std::sort(out.objects_.begin(), out.objects_.end());
  for (std::size_t i = 0; i < out.objects_.size(); ++i) out.object_index_[out.objects_[i]] = static_cast<int>(i);

  // Morphisms: singleton components are free, the rest follow from the
  // compatibility square along s = (s minus its top point) ∪ {top}.
  auto singletons = [&](const SystemObject& x) {
    std::vector<int> t;
    for (int i = 0; i < n; ++i) t.push_back(x.A[1u << i]);
    return t;
  };
  int nobj = static_cast<int>(out.objects_.size());
  out.ident_.assign(nobj, -1);
  for (int xi = 0; xi < nobj; ++xi) {
    const SystemObject& x = out.objects_[xi];
    std::vector<int> sx = singletons(x);
    for (int yi = 0; yi < nobj; ++yi) {
      const SystemObject& y = out.objects_[yi];
      std::vector<std::vector<int>> choices(n);
      for (int i = 0; i < n; ++i) choices[i] = c.hom(sx[i], y.A[1u << i]);
      for_each_product(choices, [&](const std::vector<int>& pick) {
        std::vector<int> alpha(N, -1);
        alpha[0] = c.identity(base.unit());
        for (int i = 0; i < n; ++i) alpha[1u << i] = pick[i];
        for (unsigned s : order) {
          if (popcount(s) < 2) continue;
          unsigned top = 1u << (31 - __builtin_clz(s)), s1 = s ^ top;
          int inv = c.inverse(x.a[s1 * N + top]);
          int mid = base.tensor_morphism(alpha[s1], alpha[top]);
          if (inv < 0 || mid < 0) return;
          alpha[s] = c.compose(c.compose(y.a[s1 * N + top], mid), inv);
          if (alpha[s] < 0) return;
        }
        for (unsigned s = 1; s < N; ++s)
          for (unsigned rest = (N - 1) ^ s, t = rest; t; t = (t - 1) & rest) {
            int lhs = c.compose(alpha[s | t], x.a[s * N + t]);
            int rhs = c.compose(y.a[s * N + t], base.tensor_morphism(alpha[s], alpha[t]));
            if (lhs < 0 || lhs != rhs) return;
          }
        if (out.comps_.size() >= kMaxAbarMorphisms) throw SizeBoundExceeded("Ā_n has too many morphisms");
        int f = static_cast<int>(out.comps_.size());
        std::vector<int> key{xi, yi};
        key.insert(key.end(), alpha.begin(), alpha.end());
        out.morphism_index_[key] = f;
        out.homs_[{xi, yi}].push_back(f);
        if (xi == yi) {
          bool ident = true;
          for (unsigned s = 0; s < N; ++s) ident = ident && alpha[s] == c.identity(x.A[s]);
          if (ident) out.ident_[xi] = f;
        }
        out.comps_.push_back(std::move(alpha));
        out.msrc_.push_back(xi);
        out.mtgt_.push_back(yi);
      });
    }
    if (out.ident_[xi] < 0) fail("Ā_n", "object " + system_string(x) + " has no identity");
  }
  return out;
}

AbarFunctor abar_map(const AbarCategory& from, const AbarCategory& to, const std::vector<int>& phi) {
  int m = from.n(), n = to.n();
  if (static_cast<int>(phi.size()) != m + 1 || phi[0] != 0) throw InputError("Ā(φ) needs a based map on m_+");
  for (int v : phi)
    if (v < 0 || v > n) throw InputError("based map leaves its target");
  unsigned M = 1u << m, N = 1u << n;
  auto pre = [&](unsigned u) {
    unsigned r = 0;
    for (int j = 0; j < m; ++j)
      if (phi[j + 1] > 0 && (u >> (phi[j + 1] - 1) & 1)) r |= 1u << j;
    return r;
  };
  AbarFunctor out;
  for (const SystemObject& x : from.objects()) {
    SystemObject y{std::vector<int>(N), std::vector<int>(N * N, -1)};
    for (unsigned u = 0; u < N; ++u) y.A[u] = x.A[pre(u)];
    for (unsigned u = 0; u < N; ++u)
      for (unsigned v = 0; v < N; ++v)
        if (!(u & v)) y.a[u * N + v] = x.a[pre(u) * M + pre(v)];
    int idx = to.find_object(y);
    if (idx < 0) fail("functoriality", "Ā(φ) of " + system_string(x) + " is not a coherent system");
    out.objects.push_back(idx);
  }
  for (int f = 0; f < from.morphism_count(); ++f) {
    std::vector<int> c(N);
    for (unsigned u = 0; u < N; ++u) c[u] = from.components(f)[pre(u)];
    int idx = to.find_morphism(out.objects[from.source(f)], out.objects[from.target(f)], c);
    if (idx < 0) fail("functoriality", "Ā(φ) of morphism " + std::to_string(f) + " is not compatible");
    out.morphisms.push_back(idx);
  }
  return out;
}

// ---------------------------------------------------------------- certificate

nlohmann::json Certificate::to_json() const {
  return {{"stages", stages}, {"eta_components", eta_components}};
}

Certificate certify_equivalence(const AbarCategory& abar) {
  const PermCat& A = abar.base();
  const int n = abar.n();
  if (!A.has_norms() || A.norms().n != n) throw InputError("certificate needs norms for an exponent with n points");
  Certificate cert;
  cert.stages["seed"] = A.validate();
  const FinCategory& c = A.cat();
  const Group& G = A.lattice().group();
  const unsigned N = 1u << n;
  const int unit = A.unit();
  auto bump = [&](const char* stage) {
    auto& v = cert.stages[stage];
    v = v.is_null() ? 1 : v.get<std::size_t>() + 1;
  };

  auto kappa = [&](unsigned s, const std::vector<int>& t, int pad) {
    std::vector<int> r(n, pad);
    for (int i = 0; i < n; ++i)
      if (s >> i & 1) r[i] = t[i];
    return r;
  };
  auto shuffle = [&](unsigned s, unsigned t, const std::vector<int>& objs) {
    std::vector<int> labels, list;
    for (int i = 0; i < n; ++i)
      if (s >> i & 1) labels.push_back(i);
    for (int i = 0; i < n; ++i)
      if (t >> i & 1) labels.push_back(i);
    for (int l : labels) list.push_back(objs[l]);
    std::vector<int> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    Perm rho(labels.size());
    for (std::size_t p = 0; p < sorted.size(); ++p)
      rho[p] = static_cast<int>(std::find(labels.begin(), labels.end(), sorted[p]) - labels.begin());
    return A.reorder(list, rho);
  };
  auto nu_object = [&](const std::vector<int>& t) {
    SystemObject x{std::vector<int>(N), std::vector<int>(N * N, -1)};
    for (unsigned s = 0; s < N; ++s) x.A[s] = A.norm_object(kappa(s, t, unit));
    for (unsigned s = 0; s < N; ++s)
      for (unsigned u = 0; u < N; ++u) {
        if (s & u) continue;
        int vs = A.untwistor(kappa(s, t, unit)), vu = A.untwistor(kappa(u, t, unit));
        int vsu = A.untwistor(kappa(s | u, t, unit));
        int both = A.tensor_morphism(vs, vu), sh = shuffle(s, u, t);
        int inv = vsu < 0 ? -1 : c.inverse(vsu);
        if (both < 0 || sh < 0 || inv < 0)
          fail("nu-objects", "structure map a_{s,t} undefined for tuple " + tuple_string(t));
        x.a[s * N + u] = c.compose(inv, c.compose(sh, both));
      }
    return x;
  };
  auto nu_components = [&](const std::vector<int>& f) {
    std::vector<int> r(N);
    for (unsigned s = 0; s < N; ++s) r[s] = A.norm_morphism(kappa(s, f, c.identity(unit)));
    return r;
  };
  auto delta_object = [&](const SystemObject& x) {
    std::vector<int> t;
    for (int i = 0; i < n; ++i) t.push_back(x.A[1u << i]);
    return t;
  };
  auto delta_morphism = [&](int f) {
    std::vector<int> t;
    for (int i = 0; i < n; ++i) t.push_back(abar.components(f)[1u << i]);
    return t;
  };
  auto objects_of = [&](const std::vector<int>& f, bool src) {
    std::vector<int> r;
    for (int x : f) r.push_back(src ? c.source(x) : c.target(x));
    return r;
  };

  // ν on objects, and δν = Id.
  std::vector<std::vector<int>> dom = A.tuples(n);
  std::map<std::vector<int>, int> nu;
  for (const auto& t : dom) {
    int x = abar.find_object(nu_object(t));
    if (x < 0) fail("nu-objects", "ν" + tuple_string(t) + " is not a coherent system");
    bump("nu-objects");
    nu[t] = x;
    if (delta_object(abar.objects()[x]) != t) fail("delta-nu", "δν differs from the identity at " + tuple_string(t));
    bump("delta-nu");
  }
  // ν on morphisms.
  std::vector<std::vector<int>> mtuples;
  for (const auto& s : dom)
    for (const auto& e : dom) {
      std::vector<std::vector<int>> choices(n);
      for (int i = 0; i < n; ++i) choices[i] = c.hom(s[i], e[i]);
      for_each_product(choices, [&](const std::vector<int>& f) { mtuples.push_back(f); });
    }
  std::map<std::vector<int>, int> nu_m;
  for (const auto& f : mtuples) {
    int m = abar.find_morphism(nu.at(objects_of(f, true)), nu.at(objects_of(f, false)), nu_components(f));
    if (m < 0) fail("nu-morphisms", "ν" + tuple_string(f) + " is not a morphism of systems");
    bump("nu-morphisms");
    nu_m[f] = m;
    if (delta_morphism(m) != f) fail("delta-nu", "δν differs from the identity on morphisms " + tuple_string(f));
    bump("delta-nu");
  }
  for (const auto& t : dom) {
    std::vector<int> ids;
    for (int x : t) ids.push_back(c.identity(x));
    if (nu_m.at(ids) != abar.identity(nu.at(t))) fail("nu-functor", "ν does not preserve the identity at " + tuple_string(t));
    bump("nu-functor");
  }
  std::map<std::vector<int>, std::vector<const std::vector<int>*>> by_source;
  for (const auto& f : mtuples) by_source[objects_of(f, true)].push_back(&f);
  for (const auto& g : mtuples)
    for (const auto* f : by_source[objects_of(g, false)]) {
      std::vector<int> fg(n);
      for (int i = 0; i < n; ++i) fg[i] = c.compose((*f)[i], g[i]);
      if (nu_m.at(fg) != abar.compose(nu_m.at(*f), nu_m.at(g)))
        fail("nu-functor", "ν does not preserve composition at " + tuple_string(*f) + " after " + tuple_string(g));
      bump("nu-functor");
    }

  // η: Id ⇒ νδ, built inductively along a_{s,{i}}⁻¹.
  std::vector<unsigned> order = subset_order(n);
  std::vector<int> eta(abar.object_count(), -1);
  for (int xi = 0; xi < abar.object_count(); ++xi) {
    const SystemObject& x = abar.objects()[xi];
    std::vector<int> t = delta_object(x);
    auto it = nu.find(t);
    if (it == nu.end()) fail("delta-objects", "δ of " + system_string(x) + " has no defined sum");
    const SystemObject& y = abar.objects()[it->second];
    std::vector<int> comp(N, -1);
    comp[0] = c.identity(unit);
    for (unsigned s : order) {
      int canonical = -1;
      if (popcount(s) == 1) {
        if (y.A[s] != x.A[s]) fail("eta-components", "⊕_T of a padded tuple differs from its entry");
        canonical = c.identity(x.A[s]);
      } else {
        for (int i = n - 1; i >= 0; --i) {
          unsigned bit = 1u << i;
          if (!(s & bit)) continue;
          unsigned s1 = s ^ bit;
          int step = A.tensor_morphism(comp[s1], c.identity(x.A[bit]));
          int inv = c.inverse(x.a[s1 * N + bit]);
          int cand = step < 0 || inv < 0 ? -1 : c.compose(y.a[s1 * N + bit], c.compose(step, inv));
          if (cand < 0) fail("eta-components", "η undefined at subset " + std::to_string(s) + " of " + system_string(x));
          if (canonical < 0) {
            canonical = cand;
          } else {
            if (cand != canonical)
              fail("eta-order-independence", "subset " + std::to_string(s) + " of " + system_string(x));
            bump("eta-order-independence");
          }
        }
      }
      comp[s] = canonical;
    }
    for (unsigned s = 0; s < N; ++s) {
      if (!c.is_iso(comp[s])) fail("eta-iso", "component at subset " + std::to_string(s) + " of " + system_string(x));
      bump("eta-iso");
    }
    eta[xi] = abar.find_morphism(xi, it->second, comp);
    if (eta[xi] < 0) fail("eta-morphism", "η at " + system_string(x) + " violates a compatibility square");
    bump("eta-morphism");
    ++cert.eta_components;
  }
  for (int f = 0; f < abar.morphism_count(); ++f) {
    int lhs = abar.compose(eta[abar.target(f)], f);
    int rhs = abar.compose(nu_m.at(delta_morphism(f)), eta[abar.source(f)]);
    if (lhs < 0 || lhs != rhs)
      fail("eta-naturality", "square at morphism " + std::to_string(f) + " from " +
                                 system_string(abar.objects()[abar.source(f)]));
    bump("eta-naturality");
  }
  for (int xi = 0; xi < abar.object_count(); ++xi) {
    std::vector<int> d = delta_morphism(eta[xi]);
    for (int i = 0; i < n; ++i)
      if (d[i] != c.identity(abar.objects()[xi].A[1u << i])) fail("eta-triangle", "δη is not the identity");
    bump("eta-triangle");
  }
  for (const auto& [t, x] : nu) {
    if (eta[x] != abar.identity(x)) fail("eta-triangle", "η at ν" + tuple_string(t) + " is not the identity");
    bump("eta-triangle");
  }

  // Equivariance for the twisted actions.
  for (Element g = 0; g < G.order(); ++g) {
    for (int xi = 0; xi < abar.object_count(); ++xi) {
      int gx = abar.act_object(g, xi);
      if (delta_object(abar.objects()[gx]) != A.twist_objects(g, delta_object(abar.objects()[xi])))
        fail("equivariance-delta", "object " + system_string(abar.objects()[xi]) + " under " + G.element_label(g));
      if (eta[gx] != abar.act_morphism(g, eta[xi]))
        fail("equivariance-eta", "object " + system_string(abar.objects()[xi]) + " under " + G.element_label(g));
      bump("equivariance-delta");
      bump("equivariance-eta");
    }
    for (int f = 0; f < abar.morphism_count(); ++f) {
      if (delta_morphism(abar.act_morphism(g, f)) != A.twist_morphisms(g, delta_morphism(f)))
        fail("equivariance-delta", "morphism " + std::to_string(f) + " under " + G.element_label(g));
      bump("equivariance-delta");
    }
    for (const auto& [t, x] : nu) {
      if (nu.at(A.twist_objects(g, t)) != abar.act_object(g, x))
        fail("equivariance-nu", "tuple " + tuple_string(t) + " under " + G.element_label(g));
      bump("equivariance-nu");
    }
    for (const auto& [f, m] : nu_m) {
      if (nu_m.at(A.twist_morphisms(g, f)) != abar.act_morphism(g, m))
        fail("equivariance-nu", "morphisms " + tuple_string(f) + " under " + G.element_label(g));
      bump("equivariance-nu");
    }
  }
  return cert;
}

}  // namespace transferkit
