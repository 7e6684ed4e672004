#include "doctest.h"

#include <numeric>

#include "selmer/classgroup.hpp"

using namespace selmer;

namespace {

// Class number of the imaginary quadratic order of discriminant D < 0 by
// counting reduced forms (a, b, c): |b| <= a <= c, b >= 0 if |b| = a or a = c.
long reduced_form_count(long D) {
    long h = 0;
    for (long a = 1; 3 * a * a <= -D; ++a)
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b - D;
            if (num % (4 * a)) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && a == c) continue;
            if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
            ++h;
        }
    return h;
}

int prime_divisor_count(long d) {
    d = std::labs(d);
    int t = 0;
    for (long p = 2; p * p <= d; ++p)
        if (d % p == 0) {
            ++t;
            while (d % p == 0) d /= p;
        }
    return t + (d > 1);
}

FieldPtr quad(long d) { return NumberField::build(Poly::from_descending({1, 0, -d})); }

std::vector<Int> ints(std::initializer_list<long> v) {
    std::vector<Int> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("imaginary quadratic class numbers match reduced-form counts") {
    for (long d : {-1, -2, -3, -5, -6, -14, -21, -23, -26, -47, -65, -71, -105, -163, -210}) {
        auto K = quad(d);
        long D = K->disc().get_si();
        auto cg = class_group(K);
        CAPTURE(d);
        CHECK(cg.order() == reduced_form_count(D));
        CHECK(cg.two_rank() == prime_divisor_count(D) - 1);
    }
}

TEST_CASE("known class group structures") {
    CHECK(class_group(quad(-5)).invariants == ints({2}));
    CHECK(class_group(quad(-14)).invariants == ints({4}));
    CHECK(class_group(quad(-21)).invariants == ints({2, 2}));
    CHECK(class_group(quad(-210)).invariants == ints({2, 2, 2}));
    CHECK(class_group(quad(3)).invariants.empty());
    CHECK(class_group(quad(10)).invariants == ints({2}));
    CHECK(class_group(quad(79)).invariants == ints({3}));
    CHECK(class_group(NumberField::build(Poly::from_descending({1, 0, -1, -1}))).invariants.empty());
    CHECK(class_group(NumberField::build(Poly::from_descending({1, 0, 0, -11}))).invariants == ints({2}));
    CHECK(class_group(NumberField::build(Poly::from_descending({1, 0, 0, -7}))).invariants == ints({3}));
}

TEST_CASE("roots of unity") {
    CHECK(roots_of_unity(*quad(-1)).first == 4);
    CHECK(roots_of_unity(*quad(-3)).first == 6);
    CHECK(roots_of_unity(*quad(-5)).first == 2);
    CHECK(roots_of_unity(*quad(5)).first == 2);
    auto z8 = NumberField::build(Poly::from_descending({1, 0, 0, 0, 1}));
    auto [w, zeta] = roots_of_unity(*z8);
    CHECK(w == 8);
    Elt p = zeta;
    for (int i = 1; i < 8; ++i) p = z8->mul(p, zeta);
    CHECK(p == z8->one());
}

TEST_CASE("units modulo squares have dimension r1 + r2") {
    for (auto coeffs : std::vector<std::vector<long>>{
             {1, 0, -3}, {1, 0, 5}, {1, 0, -1, -1}, {1, 0, -4, 1}, {1, 0, -10, 0, 1}, {1, 0, 0, -11}}) {
        auto K = NumberField::build(Poly::from_descending(std::vector<Int>(coeffs.begin(), coeffs.end())));
        auto cg = class_group(K);
        auto U = units_mod_squares(cg);
        CAPTURE(K->describe());
        CHECK(U.dim == K->r1() + K->r2());
        CHECK(U.saturated);
        if (!U.elements.empty()) {
            CHECK(static_cast<int>(U.elements.size()) == U.dim);
            for (auto& u : U.elements) CHECK(abs(K->norm(u)) == 1);
        }
    }
}

TEST_CASE("Q(sqrt 3): the unit signature image has rank one") {
    auto K = quad(3);
    auto cg = class_group(K);
    auto U = units_mod_squares(cg);
    REQUIRE(U.dim == 2);
    // The sign image of the units is {(0,0), (1,1)}: 2 + sqrt 3 is totally positive.
    std::vector<BitVec> span = U.signs;
    int rank = static_cast<int>(f2_rank(span));
    CHECK(rank == 1);
}

TEST_CASE("narrow class groups and the sign/unit index identity") {
    // |sgn(O^x)| * |Cl^+| = 2^{r1} * |Cl|
    for (long d : {2, 3, 5, 6, 10, 15, 21, 30, 34, 39, 79, 105}) {
        auto K = quad(d);
        auto cg = class_group(K);
        auto U = units_mod_squares(cg);
        auto narrow = modified_class_group(cg, {});
        auto full = modified_class_group(cg, {BitVec::from_string("10"), BitVec::from_string("01")});
        CAPTURE(d);
        CHECK(full.invariants == cg.invariants);
        int sign_rank = static_cast<int>(f2_rank(U.signs));
        CHECK(narrow.order() * (Int(1) << sign_rank) == cg.order() * 4);
        long D = K->disc().get_si();
        CHECK(narrow.two_rank == prime_divisor_count(D) - 1);
    }
    CHECK(modified_class_group(class_group(quad(21)), {}).invariants == ints({2}));
    CHECK(modified_class_group(class_group(quad(3)), {}).invariants == ints({2}));
}

TEST_CASE("class group is independent of the random seed") {
    for (auto coeffs : std::vector<std::vector<long>>{{1, 0, 105}, {1, 0, 0, -11}, {1, 1, -2, 8}}) {
        auto K = NumberField::build(Poly::from_descending(std::vector<Int>(coeffs.begin(), coeffs.end())));
        std::vector<Int> ref;
        for (std::uint64_t seed : {1, 2, 3, 17}) {
            ClassGroupOptions o;
            o.seed = seed;
            auto cg = class_group(K, o);
            if (seed == 1) ref = cg.invariants;
            CHECK(cg.invariants == ref);
            CHECK(cg.certified);
        }
    }
}

TEST_CASE("discrete logarithms are homomorphic and detect principal ideals") {
    auto K = quad(-14);
    auto cg = class_group(K);
    REQUIRE(cg.invariants == ints({4}));
    auto P3 = decompose_prime(*K, Int(3));
    REQUIRE(P3.size() == 2);
    auto a = class_dlog(cg, P3[0].ideal);
    auto b = class_dlog(cg, P3[1].ideal);
    CHECK((a[0] + b[0]) % 4 == 0);
    CHECK(class_dlog(cg, principal_ideal(*K, K->from_coeffs(ints({5, 3}))))[0] == 0);
    auto g = class_generator(cg, 0);
    CHECK(class_dlog(cg, g)[0] == 1);
    auto P23 = decompose_prime(*K, Int(23));  // outside the factor base
    auto c = class_dlog(cg, ideal_mul(*K, P23[0].ideal, P3[0].ideal));
    CHECK(c[0] == (class_dlog(cg, P23[0].ideal)[0] + a[0]) % 4);
}

TEST_CASE("square classes of S-units") {
    auto K = quad(-5);
    auto cg = class_group(K);
    // 4 = 2^2 and 9 are squares; -1 and 2 are not squares.
    CHECK(sq_class(cg, K->from_int(9)).is_zero());
    CHECK(sq_class(cg, K->from_int(4)).is_zero());
    CHECK_FALSE(sq_class(cg, K->from_int(-1)).is_zero());
    CHECK_FALSE(sq_class(cg, K->from_int(2)).is_zero());
    auto x = K->from_coeffs(ints({1, 1}));  // 1 + sqrt(-5), norm 6
    auto x2 = K->mul(x, x);
    CHECK(sq_class(cg, x2).is_zero());
}
