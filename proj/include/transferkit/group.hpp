#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace transferkit {

using Element = int;
using Perm = std::vector<int>;

// Hard limit imposed by 64-bit subgroup masks.
inline constexpr int kMaxGroupOrder = 64;

// A finite group given by its multiplication table on indices 0..order-1.
class Group {
 public:
  // Validates closure of the table, associativity, a two-sided identity and
  // two-sided inverses, in that order. Errors name the first witness found
  // scanning in index order.
  static Group from_table(std::string name, const std::vector<std::vector<int>>& table);

  // Closure of permutation generators on {0..degree-1}. Elements are sorted
  // lexicographically as permutations, so the identity is element 0.
  static Group from_generators(std::string name, int degree, const std::vector<Perm>& gens);

  // "C_n", "S_n" (n<=5), "A_n" (n<=5), "D_n" (order 2n), "trivial", and
  // direct products joined by 'x', e.g. "C_2xC_2" or "C_2xS_3".
  static Group builtin(std::string_view name);

  // Names of builtin groups of order <= max_order, in a fixed order.
  static std::vector<std::string> builtin_catalog(int max_order);

  static Group direct_product(const Group& a, const Group& b);

  int order() const { return n_; }
  Element identity() const { return identity_; }
  Element mul(Element a, Element b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  Element inv(Element a) const { return inv_[a]; }
  Element conj(Element a, Element x) const { return mul(mul(a, x), inv(a)); }
  Element power(Element a, int k) const;
  int element_order(Element a) const;
  bool is_abelian() const;

  const std::string& name() const { return name_; }
  // A generating set; the elements 1..order-1 when nothing better is known.
  const std::vector<Element>& generators() const { return gens_; }
  // Set for builtin cyclic groups, where element k is the residue k mod n.
  std::optional<int> cyclic_order() const { return cyclic_; }
  // Permutation realization, when the group came from permutations.
  const std::vector<Perm>& permutations() const { return perms_; }
  std::optional<Element> element_of(const Perm& p) const;

  std::string element_label(Element a) const;
  std::vector<std::vector<int>> table() const;

  // SHA-256 over the name-free table; identifies the group for caching.
  std::string hash() const;

 private:
  Group() = default;
  void finish();

  int n_ = 0;
  Element identity_ = 0;
  std::vector<std::uint8_t> table_;
  std::vector<Element> inv_;
  std::vector<Element> gens_;
  std::vector<Perm> perms_;
  std::vector<std::string> labels_;
  std::optional<int> cyclic_;
  std::string name_;
};

// Cycle notation with 1-based points, e.g. "(1 2)"; "e" for the identity.
std::string cycle_notation(const Perm& p);

// Parses "(1 2)(3 4)" into a permutation of the given degree.
Perm parse_cycles(std::string_view text, int degree);

}  // namespace transferkit
