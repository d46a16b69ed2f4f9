#include "dnsim/gf256.hpp"

#include <array>
#include <cstring>

namespace dnsim::gf {
namespace {

struct Tables {
  std::array<uint8_t, 512> exp{};  // doubled so log[a]+log[b] needs no modulo
  std::array<uint8_t, 256> log{};
  std::array<uint8_t, 256> inv{};
  // flat 64 KiB multiply table, row c holds c*b for all b
  std::array<uint8_t, 256 * 256> mul{};

  Tables() {
    uint16_t x = 1;
    for (int i = 0; i < 255; ++i) {
      exp[i] = static_cast<uint8_t>(x);
      log[x] = static_cast<uint8_t>(i);
      x <<= 1;
      if (x & 0x100) x ^= 0x11d;
    }
    for (int i = 255; i < 512; ++i) exp[i] = exp[i - 255];
    for (int a = 1; a < 256; ++a) inv[a] = exp[255 - log[a]];
    for (int c = 1; c < 256; ++c)
      for (int b = 1; b < 256; ++b)
        mul[static_cast<size_t>(c) * 256 + b] = exp[log[c] + log[b]];
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

uint8_t mul(uint8_t a, uint8_t b) {
  return tables().mul[static_cast<size_t>(a) * 256 + b];
}

uint8_t inv(uint8_t a) { return tables().inv[a]; }

void mul_add(uint8_t* dst, const uint8_t* src, uint8_t c, size_t n) {
  if (c == 0) return;
  if (c == 1) {
    // plain XOR, word at a time
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
      uint64_t a, b;
      std::memcpy(&a, dst + i, 8);
      std::memcpy(&b, src + i, 8);
      a ^= b;
      std::memcpy(dst + i, &a, 8);
    }
    for (; i < n; ++i) dst[i] ^= src[i];
    return;
  }
  const uint8_t* row = tables().mul.data() + static_cast<size_t>(c) * 256;
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    dst[i] ^= row[src[i]];
    dst[i + 1] ^= row[src[i + 1]];
    dst[i + 2] ^= row[src[i + 2]];
    dst[i + 3] ^= row[src[i + 3]];
  }
  for (; i < n; ++i) dst[i] ^= row[src[i]];
}

void scale(uint8_t* row_data, uint8_t c, size_t n) {
  if (c == 1) return;
  if (c == 0) {
    std::memset(row_data, 0, n);
    return;
  }
  const uint8_t* row = tables().mul.data() + static_cast<size_t>(c) * 256;
  for (size_t i = 0; i < n; ++i) row_data[i] = row[row_data[i]];
}

}  // namespace dnsim::gf
