#include "selmer/simd.hpp"

namespace selmer::simd::scalar {

void xor_rows(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords) {
    for (std::size_t i = 0; i < nwords; ++i) dst[i] ^= src[i];
}

void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = (dst[i] + c * src[i]) % p;
}

}  // namespace selmer::simd::scalar
