#pragma once

#include <cstddef>
#include <cstdint>

// Arithmetic over GF(2^8), reduction polynomial x^8 + x^4 + x^3 + x^2 + 1
// (0x11d), generator 2. Backs the dense random-linear fountain code.

namespace dnsim::gf {

uint8_t mul(uint8_t a, uint8_t b);
uint8_t inv(uint8_t a);  // a must be nonzero

// dst[i] ^= c * src[i] for i in [0, n)
void mul_add(uint8_t* dst, const uint8_t* src, uint8_t c, size_t n);

// row[i] *= c
void scale(uint8_t* row, uint8_t c, size_t n);

}  // namespace dnsim::gf
