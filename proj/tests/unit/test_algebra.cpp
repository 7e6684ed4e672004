#include "doctest.h"

#include "selmer/f2.hpp"
#include "selmer/matrix.hpp"
#include "selmer/poly.hpp"
#include "selmer/simd.hpp"

using namespace selmer;

namespace {

bool is_row_hnf(const IntMatrix& H) {
    std::size_t last = 0;
    for (std::size_t i = 0; i < H.rows(); ++i) {
        std::size_t p = 0;
        while (p < H.cols() && H(i, p) == 0) ++p;
        if (p == H.cols()) return false;
        if (i > 0 && p <= last) return false;
        if (H(i, p) <= 0) return false;
        for (std::size_t k = 0; k < i; ++k)
            if (H(k, p) < 0 || H(k, p) >= H(i, p)) return false;
        last = p;
    }
    return true;
}

IntMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, long bound) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.range(-bound, bound);
    return m;
}

}  // namespace

TEST_CASE("hnf: identity is fixed with identity transform") {
    auto res = hnf(IntMatrix::identity(2));
    CHECK(res.H == IntMatrix::identity(2));
    CHECK(res.U == IntMatrix::identity(2));
}

TEST_CASE("hnf: hand-reduced 2x2 lattice") {
    auto res = hnf(IntMatrix::from_rows({{2, 0}, {1, 1}}));
    CHECK(res.H == IntMatrix::from_rows({{1, 1}, {0, 2}}));
    CHECK(determinant(res.U) * determinant(res.U) == 1);
}

TEST_CASE("hnf: zero row is eliminated") {
    auto res = hnf(IntMatrix::from_rows({{0, 0}}));
    CHECK(res.H.rows() == 0);
}

TEST_CASE("hnf: canonical, idempotent, and U*m reproduces H on random inputs") {
    Rng rng(7);
    for (int t = 0; t < 40; ++t) {
        std::size_t r = 1 + rng.below(6), c = 1 + rng.below(5);
        IntMatrix m = random_matrix(rng, r, c, 9);
        auto res = hnf(m);
        CHECK(is_row_hnf(res.H));
        IntMatrix prod = res.U * m;
        for (std::size_t i = 0; i < prod.rows(); ++i)
            for (std::size_t j = 0; j < c; ++j)
                CHECK(prod(i, j) == (i < res.H.rows() ? res.H(i, j) : Int(0)));
        CHECK(abs(determinant(res.U)) == 1);
        CHECK(hnf_basis(res.H) == res.H);
        // A unimodular change of generators gives the same canonical form.
        IntMatrix W = IntMatrix::identity(r);
        for (std::size_t i = 0; i + 1 < r; ++i) W(i, i + 1) = rng.range(-3, 3);
        CHECK(hnf_basis(W * m) == res.H);
    }
}

TEST_CASE("hnf_mod agrees with plain HNF on full-rank lattices") {
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        IntMatrix m = random_matrix(rng, 6, 4, 20);
        IntMatrix H = hnf_basis(m);
        if (H.rows() < 4) continue;
        Int D = 1;
        for (std::size_t i = 0; i < 4; ++i) D *= H(i, i);
        CHECK(hnf_mod(m, D) == H);
        CHECK(hnf_mod(m, 3 * D) == H);
    }
}

TEST_CASE("snf: worked examples") {
    CHECK(snf(IntMatrix::from_rows({{2, 0}, {0, 3}})) == std::vector<Int>{1, 6});
    CHECK(snf(IntMatrix::identity(3)) == std::vector<Int>{1, 1, 1});
    CHECK(snf(IntMatrix(1, 1)) == std::vector<Int>{0});
}

TEST_CASE("snf: divisibility chain, transforms and determinant on random inputs") {
    Rng rng(3);
    for (int t = 0; t < 40; ++t) {
        std::size_t n = 1 + rng.below(5);
        IntMatrix m = random_matrix(rng, n, n, 6);
        auto res = snf_with_transform(m);
        for (std::size_t i = 0; i + 1 < res.divisors.size(); ++i) {
            if (res.divisors[i + 1] == 0) continue;
            CHECK(res.divisors[i] != 0);
            CHECK(mpz_divisible_p(res.divisors[i + 1].get_mpz_t(), res.divisors[i].get_mpz_t()));
        }
        Int prod = 1;
        for (auto& d : res.divisors) prod *= d;
        CHECK(prod == abs(determinant(m)));
        IntMatrix D = res.U * m * res.V;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) CHECK(D(i, j) == (i == j ? res.divisors[i] : Int(0)));
        // Normal forms are fixed points.
        IntMatrix diag(n, n);
        for (std::size_t i = 0; i < n; ++i) diag(i, i) = res.divisors[i];
        CHECK(snf(diag) == res.divisors);
    }
}

TEST_CASE("cubic_discriminant: worked examples") {
    CHECK(cubic_discriminant(Poly{-1, -1, 0, 1}) == -23);
    CHECK(cubic_discriminant(Poly{16, 16, 0, 1}) == -23296);
    CHECK(cubic_discriminant(Poly{0, 0, 0, 1}) == 0);
    CHECK_THROWS_AS(cubic_discriminant(Poly{1, 0, 1}), MathError);
    CHECK_THROWS_AS(cubic_discriminant(Poly{1, 0, 0, 2}), MathError);
}

TEST_CASE("cubic_discriminant matches the depressed-cubic formula and vanishes exactly on repeated roots") {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        long a = rng.range(-6, 6), b = rng.range(-20, 20), c = rng.range(-20, 20);
        Poly f{c, b, a, 1};
        Rat d = cubic_discriminant(f);
        // Generic formula for x^3 + a x^2 + b x + c.
        Rat expect = Rat(a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c);
        CHECK(d == expect);
        CHECK((d == 0) == (gcd(f, f.derivative()).degree() > 0));
    }
}

TEST_CASE("factor_mod_p: worked examples") {
    Rng rng(1);
    auto f1 = factor_mod_p(Poly{-1, -1, 0, 1}, 2, rng);
    REQUIRE(f1.size() == 1);
    CHECK(f1[0].poly.size() == 4);
    CHECK(f1[0].multiplicity == 1);

    auto f2 = factor_mod_p(Poly{-1, 0, 0, 1}, 7, rng);
    REQUIRE(f2.size() == 3);
    std::vector<std::uint64_t> roots;
    for (auto& f : f2) {
        CHECK(f.poly.size() == 2);
        roots.push_back((7 - f.poly[0]) % 7);
    }
    std::sort(roots.begin(), roots.end());
    CHECK(roots == std::vector<std::uint64_t>{1, 2, 4});

    auto f3 = factor_mod_p(Poly{0, 0, 1}, 3, rng);
    REQUIRE(f3.size() == 1);
    CHECK(f3[0].poly == modp::Vec{0, 1});
    CHECK(f3[0].multiplicity == 2);
}

TEST_CASE("factor_mod_p: product of factors reproduces the input on random polynomials") {
    Rng rng(99);
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 31ull, 1000003ull}) {
        for (int t = 0; t < 25; ++t) {
            int deg = 1 + static_cast<int>(rng.below(9));
            std::vector<Rat> c;
            for (int i = 0; i < deg; ++i) c.emplace_back(rng.range(-50, 50));
            c.emplace_back(1);
            Poly f(c);
            auto fac = factor_mod_p(f, p, rng);
            modp::Vec prod{1};
            for (auto& x : fac) {
                // Irreducible: no proper factor detected by the distinct-degree test.
                auto again = modp::factor(x.poly, p, rng);
                CHECK(again.size() == 1);
                CHECK(again[0].multiplicity == 1);
                for (int e = 0; e < x.multiplicity; ++e) prod = modp::mul(prod, x.poly, p);
            }
            CHECK(prod == modp::reduce(f, p));
        }
    }
}

TEST_CASE("factor_over_Z recovers products of known factors") {
    Rng rng(4);
    Poly a{1, 1, 0, 1};     // x^3 + x + 1
    Poly b{-2, 0, 1};       // x^2 - 2
    Poly c{3, -1, 0, 0, 1}; // x^4 - x + 3
    auto fac = factor_over_Z(a * b * b * c, rng);
    CHECK(fac.unit == 1);
    REQUIRE(fac.factors.size() == 3);
    CHECK(fac.factors[0].first == b);
    CHECK(fac.factors[0].second == 2);
    CHECK(fac.factors[1].first == a);
    CHECK(fac.factors[2].first == c);
    Poly w;
    CHECK(find_rational_factor(a * c, rng, w));
    CHECK_FALSE(find_rational_factor(Poly{-1, -1, 0, 1}, rng, w));
    // x^4 + 1 is irreducible over Q although it splits modulo every prime.
    CHECK_FALSE(find_rational_factor(Poly{1, 0, 0, 0, 1}, rng, w));
}

TEST_CASE("f2_kernel: worked examples") {
    F2Map zero(3, 2);
    CHECK(f2_kernel(zero).size() == 3);
    F2Map id(3, 3);
    for (int i = 0; i < 3; ++i) id.images[i] = BitVec::unit(3, i);
    CHECK(f2_kernel(id).empty());
    F2Map row(2, 1);
    row.images[0] = BitVec::from_string("1");
    row.images[1] = BitVec::from_string("1");
    auto k = f2_kernel(row);
    REQUIRE(k.size() == 1);
    CHECK(k[0] == BitVec::from_string("11"));
}

TEST_CASE("f2: rank-nullity and preimage on random maps") {
    Rng rng(12);
    for (int t = 0; t < 50; ++t) {
        std::size_t d = 1 + rng.below(70), c = 1 + rng.below(70);
        F2Map f(d, c);
        for (auto& img : f.images)
            for (std::size_t j = 0; j < c; ++j)
                if (rng.below(3) == 0) img.set(j);
        auto ker = f2_kernel(f);
        auto im = f2_image(f);
        CHECK(ker.size() + im.size() == d);
        for (auto& v : ker) CHECK(f.apply(v).is_zero());
        auto pre = f2_preimage(f, {});
        CHECK(pre.size() == ker.size());
        auto all = f2_preimage(f, im);
        CHECK(all.size() == d);
    }
}

TEST_CASE("simd kernels agree with the scalar reference") {
    Rng rng(77);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = rng.below(70);
        std::vector<std::uint64_t> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.next();
            b[i] = rng.next();
        }
        auto s = a, v = a;
        simd::scalar::xor_rows(s.data(), b.data(), n);
        if (simd::detected_isa() == simd::Isa::Avx2) {
            simd::avx2::xor_rows(v.data(), b.data(), n);
            CHECK(s == v);
        }
        std::uint32_t p = static_cast<std::uint32_t>(2 + rng.below(32700));
        std::vector<std::uint32_t> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = static_cast<std::uint32_t>(rng.below(p));
            y[i] = static_cast<std::uint32_t>(rng.below(p));
        }
        std::uint32_t c = static_cast<std::uint32_t>(rng.below(p));
        auto xs = x, xv = x;
        simd::scalar::axpy_mod(xs.data(), y.data(), c, p, n);
        if (simd::detected_isa() == simd::Isa::Avx2) {
            simd::avx2::axpy_mod(xv.data(), y.data(), c, p, n);
            CHECK(xs == xv);
        }
    }
    // Both dispatch modes give identical ranks.
    std::vector<std::vector<std::uint32_t>> rows(30, std::vector<std::uint32_t>(40));
    for (auto& r : rows)
        for (auto& e : r) e = static_cast<std::uint32_t>(rng.below(7));
    auto prev = simd::set_isa(simd::Isa::Scalar);
    auto r1 = fp_rank(rows, 7);
    simd::set_isa(simd::Isa::Avx2);
    auto r2 = fp_rank(rows, 7);
    simd::set_isa(prev);
    CHECK(r1 == r2);
}

TEST_CASE("integer factorization and modular square roots") {
    auto f = factor_integer(Int("-23296"));
    CHECK(f == Factorization{{2, 8}, {7, 1}, {13, 1}});
    Int big = Int("1000000007") * Int("998244353") * Int("1000000007");
    auto g = factor_integer(big);
    CHECK(g == Factorization{{Int("998244353"), 1}, {Int("1000000007"), 2}});
    std::uint64_t r;
    CHECK(sqrt_mod(2, 7, r));
    CHECK(mulmod(r, r, 7) == 2);
    CHECK_FALSE(sqrt_mod(3, 7, r));
}
