#pragma once
// Row kernels for the two elimination loops that dominate the linear algebra:
// XOR of bit rows over F_2 and dst += c*src over a small prime field.
// Each kernel has a portable scalar reference and an AVX2 variant; the
// variant is chosen once at runtime from the CPU feature flags.

#include <cstddef>
#include <cstdint>

namespace selmer::simd {

enum class Isa { Scalar, Avx2 };

Isa detected_isa();
// Force a kernel family (used by the equivalence tests); returns the previous choice.
Isa set_isa(Isa isa);
Isa active_isa();
const char* isa_name(Isa isa);

// dst[i] ^= src[i] for i < nwords.
void xor_rows(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords);
// dst[i] = (dst[i] + c * src[i]) mod p, entries in [0, p), p < 2^15.
void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p, std::size_t n);

namespace scalar {
void xor_rows(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords);
void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p, std::size_t n);
}  // namespace scalar

namespace avx2 {
void xor_rows(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords);
void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p, std::size_t n);
}  // namespace avx2

}  // namespace selmer::simd
