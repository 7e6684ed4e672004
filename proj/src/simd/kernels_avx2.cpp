#include "selmer/simd.hpp"

#include <immintrin.h>

namespace selmer::simd::avx2 {

__attribute__((target("avx2"))) void xor_rows(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords) {
    std::size_t i = 0;
    for (; i + 4 <= nwords; i += 4) {
        __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a, b));
    }
    for (; i < nwords; ++i) dst[i] ^= src[i];
}

// t = dst + c*src < 2^31 fits a 32-bit lane.  The quotient t/p is estimated in
// double precision (exact to well under one unit for t < 2^31) and the
// remainder is corrected by at most one subtraction or addition of p.
__attribute__((target("avx2"))) void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c,
                                              std::uint32_t p, std::size_t n) {
    const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
    const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
    const __m256d inv = _mm256_set1_pd(1.0 / static_cast<double>(p));
    const __m256i zero = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i t = _mm256_add_epi32(d, _mm256_mullo_epi32(s, vc));
        __m256d lo = _mm256_cvtepi32_pd(_mm256_castsi256_si128(t));
        __m256d hi = _mm256_cvtepi32_pd(_mm256_extracti128_si256(t, 1));
        __m128i qlo = _mm256_cvttpd_epi32(_mm256_mul_pd(lo, inv));
        __m128i qhi = _mm256_cvttpd_epi32(_mm256_mul_pd(hi, inv));
        __m256i q = _mm256_set_m128i(qhi, qlo);
        __m256i r = _mm256_sub_epi32(t, _mm256_mullo_epi32(q, vp));
        // r in (-p, 2p): fold into [0, p).
        r = _mm256_add_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(zero, r), vp));
        __m256i ge = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(vp, _mm256_set1_epi32(1)));
        r = _mm256_sub_epi32(r, _mm256_and_si256(ge, vp));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), r);
    }
    for (; i < n; ++i) dst[i] = (dst[i] + c * src[i]) % p;
}

}  // namespace selmer::simd::avx2
