#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace transferkit {

using Bitset = boost::dynamic_bitset<std::uint64_t>;

template <class F>
void for_each_bit(const Bitset& b, F&& f) {
  for (auto i = b.find_first(); i != Bitset::npos; i = b.find_next(i)) f(static_cast<int>(i));
}

template <class F>
void for_each_bit(std::uint64_t mask, F&& f) {
  while (mask) {
    int i = __builtin_ctzll(mask);
    f(i);
    mask &= mask - 1;
  }
}

inline int popcount(std::uint64_t m) { return __builtin_popcountll(m); }

inline std::vector<int> bits_of(const Bitset& b) {
  std::vector<int> out;
  for_each_bit(b, [&](int i) { out.push_back(i); });
  return out;
}

inline std::vector<int> bits_of(std::uint64_t m) {
  std::vector<int> out;
  for_each_bit(m, [&](int i) { out.push_back(i); });
  return out;
}

// Numeric comparison: bit i has weight 2^i.
inline bool bitset_less(const Bitset& a, const Bitset& b) {
  std::size_t n = std::max(a.num_blocks(), b.num_blocks());
  std::vector<std::uint64_t> ba(n, 0), bb(n, 0);
  boost::to_block_range(a, ba.begin());
  boost::to_block_range(b, bb.begin());
  for (std::size_t i = n; i-- > 0;) {
    if (ba[i] != bb[i]) return ba[i] < bb[i];
  }
  return false;
}

// Hex string, most significant nibble first; used as a stable cache key.
std::string bitset_to_hex(const Bitset& b);
Bitset bitset_from_hex(const std::string& hex, std::size_t nbits);

}  // namespace transferkit
