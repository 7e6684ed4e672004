#include "selmer/simd.hpp"

#include <atomic>

namespace selmer::simd {

namespace {

Isa probe() {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
    return Isa::Scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{probe()};
    return isa;
}

}  // namespace

Isa detected_isa() {
    static const Isa isa = probe();
    return isa;
}

Isa set_isa(Isa isa) {
    if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) isa = Isa::Scalar;
    return current().exchange(isa);
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void xor_rows(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords) {
    if (active_isa() == Isa::Avx2) avx2::xor_rows(dst, src, nwords);
    else scalar::xor_rows(dst, src, nwords);
}

void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::uint32_t p, std::size_t n) {
    if (active_isa() == Isa::Avx2) avx2::axpy_mod(dst, src, c, p, n);
    else scalar::axpy_mod(dst, src, c, p, n);
}

}  // namespace selmer::simd
