#include "transferkit/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>
#include <stdexcept>

#include "transferkit/bitset.hpp"

namespace transferkit {

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string bitset_to_hex(const Bitset& b) {
  static const char* hex = "0123456789abcdef";
  std::size_t nibbles = (b.size() + 3) / 4;
  std::string out(nibbles ? nibbles : 1, '0');
  for (std::size_t q = 0; q < nibbles; ++q) {
    int v = 0;
    for (int j = 0; j < 4; ++j) {
      std::size_t i = q * 4 + j;
      if (i < b.size() && b[i]) v |= 1 << j;
    }
    out[out.size() - 1 - q] = hex[v];
  }
  return out;
}

Bitset bitset_from_hex(const std::string& hex, std::size_t nbits) {
  Bitset b(nbits);
  for (std::size_t q = 0; q < hex.size(); ++q) {
    char c = hex[hex.size() - 1 - q];
    int v = (c >= '0' && c <= '9') ? c - '0' : (c >= 'a' && c <= 'f') ? c - 'a' + 10 : -1;
    if (v < 0) throw std::invalid_argument("bad hex digit");
    for (int j = 0; j < 4; ++j) {
      if (!(v >> j & 1)) continue;
      std::size_t i = q * 4 + j;
      if (i >= nbits) throw std::invalid_argument("hex value wider than bitset");
      b[i] = true;
    }
  }
  return b;
}

}  // namespace transferkit
