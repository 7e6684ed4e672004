#include "doctest.h"

#include "selmer/relative.hpp"

using namespace selmer;

namespace {

FieldPtr field(std::vector<Int> desc) { return NumberField::build(Poly::from_descending(desc)); }

std::array<Elt, 4> rational_cubic(const NumberField& K, long c0, long c1, long c2) {
    return {K.from_int(c0), K.from_int(c1), K.from_int(c2), K.one()};
}

}  // namespace

TEST_CASE("absolutize over Q") {
    auto Q = field({1, 0});
    auto R = absolutize(Q, rational_cubic(*Q, -1, -1, 0));
    CHECK(R.L->degree() == 3);
    CHECK(R.L->disc() == -23);
    CHECK(R.a == 1);
    CHECK(R.b == 0);
    CHECK(R.places[0].ramified);
    CHECK(relative_norm(R, R.x_in_L) == Q->from_int(1));  // -q with q = -1
}

TEST_CASE("absolutize over a real quadratic field") {
    auto K = field({1, 0, -3});
    auto R = absolutize(K, rational_cubic(*K, 16, 16, 0));
    CHECK(R.L->degree() == 6);
    CHECK(R.a == 2);
    CHECK(R.b == 0);
    CHECK(R.c == 0);
    CHECK(R.L->r1() == R.a + 3 * R.b);
    CHECK(relative_norm(R, R.x_in_L) == K->from_int(-16));
    // N(alpha) = alpha^3 on K.
    Elt s = K->add(K->gen(), K->from_int(2));
    CHECK(relative_norm(R, embed_base(R, s)) == K->pow(s, 3));
    CHECK(relative_norm(R, R.L->one()) == K->one());
}

TEST_CASE("unramified places are ordered by the cubic's roots") {
    auto K = field({1, 0, -3});
    // F = x^3 - 4x + 1 + sqrt3 has three real roots under both embeddings.
    std::array<Elt, 4> F{K->add(K->one(), K->gen()), K->from_int(-4), K->zero(), K->one()};
    auto R = absolutize(K, F);
    CHECK(R.b == 2);
    CHECK(R.a == 0);
    CHECK(R.L->r1() == 6);
    auto xe = R.L->embeddings(R.x_in_L);
    auto ge = R.L->embeddings(R.g_in_L);
    auto ke = K->embeddings(K->gen());
    for (int v = 0; v < 2; ++v) {
        const auto& ls = R.places[v].l_places;
        REQUIRE(ls.size() == 3);
        CHECK(xe[ls[0]].real() < xe[ls[1]].real());
        CHECK(xe[ls[1]].real() < xe[ls[2]].real());
        for (int l : ls) CHECK(std::abs(ge[l].real() - ke[v].real()) < 1e-9);
    }
}

TEST_CASE("relative norm is multiplicative and compatible with absolute norms") {
    auto K = field({1, 0, -21});
    std::array<Elt, 4> F{K->from_int(2), K->from_int(-3), K->basis(1), K->one()};
    auto R = absolutize(K, F);
    Rng rng(9);
    for (int t = 0; t < 10; ++t) {
        std::vector<Int> a, b;
        for (int i = 0; i < 6; ++i) {
            a.push_back(Int(rng.range(-5, 5)));
            b.push_back(Int(rng.range(-5, 5)));
        }
        auto x = R.L->from_coeffs(a), y = R.L->from_coeffs(b);
        if (x.is_zero() || y.is_zero()) continue;
        CHECK(relative_norm(R, R.L->mul(x, y)) == K->mul(relative_norm(R, x), relative_norm(R, y)));
        CHECK(K->norm(relative_norm(R, x)) == R.L->norm(x));
        CHECK(from_relative(R, to_relative(R, x)) == x);
    }
}

TEST_CASE("reducible cubic over K is rejected") {
    auto K = field({1, 0, -2});
    // (x - sqrt2)(x^2 + 1)
    Elt r = K->gen();
    std::array<Elt, 4> F{K->neg(r), K->one(), K->neg(r), K->one()};
    CHECK_THROWS_AS(absolutize(K, F), MathError);
    CHECK_THROWS_AS(absolutize(K, {K->one(), K->one(), K->one(), K->from_int(2)}), MathError);
}
