#include "doctest.h"

#include "selmer/numberfield.hpp"
#include "selmer/realroots.hpp"

using namespace selmer;

TEST_CASE("real root isolation counts and orders roots") {
    Poly f = Poly::from_descending({1, 0, -4, 1});  // x^3 - 4x + 1, three real roots
    auto iv = isolate_real_roots(f);
    REQUIRE(iv.size() == 3);
    for (size_t i = 0; i + 1 < iv.size(); ++i) {
        CHECK(iv[i].hi <= iv[i + 1].lo);
        CHECK(f.eval(iv[i].hi) != 0);
    }
    CHECK(count_real_roots(Poly::from_descending({1, 0, 1})) == 0);
    auto r = refine_root(Poly::from_descending({1, 0, -2}), isolate_real_roots(Poly::from_descending({1, 0, -2}))[1],
                         make_rat(1, 1000000));
    CHECK(std::abs(midpoint_double(r) - 1.41421356) < 1e-6);
}

TEST_CASE("quadratic fields: discriminants and integral bases") {
    auto k3 = NumberField::build(Poly::from_descending({1, 0, -3}));
    CHECK(k3->disc() == 12);
    CHECK(k3->r1() == 2);
    auto k21 = NumberField::build(Poly::from_descending({1, 0, -21}));
    CHECK(k21->disc() == 21);
    CHECK(k21->index() == 2);
    // Second basis element is (1 + sqrt21)/2.
    CHECK(k21->basis_den() == 2);
    CHECK(k21->basis_num()(1, 0) == 1);
    CHECK(k21->basis_num()(1, 1) == 1);
    auto km5 = NumberField::build(Poly::from_descending({1, 0, 5}));
    CHECK(km5->disc() == -20);
    CHECK(km5->r2() == 1);
}

TEST_CASE("cubic and higher-degree fields") {
    auto f = NumberField::build(Poly::from_descending({1, 0, -1, -1}));
    CHECK(f->disc() == -23);
    CHECK(f->r1() == 1);
    CHECK(f->r2() == 1);
    // x^3 + x^2 - 2x + 8 (Dedekind's non-monogenic field), disc -503, index 2 in Z[theta].
    auto h = NumberField::build(Poly::from_descending({1, 1, -2, 8}));
    CHECK(h->disc() == -503);
    CHECK(h->index() == 2);
    // x^4 - 10x^2 + 1 = minimal polynomial of sqrt2 + sqrt3, disc 2304.
    auto q = NumberField::build(Poly::from_descending({1, 0, -10, 0, 1}));
    CHECK(q->disc() == 2304);
}

TEST_CASE("reducible polynomials are rejected with a witness") {
    Poly f = Poly::from_descending({1, 0, -4});
    CHECK_THROWS_AS(NumberField::build(f), ReducibleError);
    try {
        NumberField::build(Poly::from_descending({1, 0, 0, -8}));
        FAIL("expected reducibility");
    } catch (const ReducibleError& e) {
        CHECK((Poly::from_descending({1, 0, 0, -8}) % e.witness()).degree() < 0);
    }
    CHECK_THROWS_AS(NumberField::build(Poly::from_descending({2, 0, -3})), MathError);
}

TEST_CASE("signs use decreasing root order") {
    auto k = NumberField::build(Poly::from_descending({1, 0, -3}));
    auto a = k->gen();
    CHECK(k->signs(a) == std::vector<int>{1, -1});
    CHECK(k->signs(k->from_int(-1)) == std::vector<int>{-1, -1});
    auto u = k->add(k->from_int(2), a);
    CHECK(k->signs(u) == std::vector<int>{1, 1});
    CHECK(k->norm(u) == 1);
    // 2 - sqrt3 is tiny but positive at both places; sign needs exact arithmetic.
    auto v = k->pow(k->sub(k->from_int(2), a), 40);
    CHECK(k->signs(v) == std::vector<int>{1, 1});
    CHECK(k->signs(k->sub(v, k->from_rat(make_rat(1, Int(1) << 66)))) == std::vector<int>{-1, 1});
}

TEST_CASE("element arithmetic identities") {
    Rng rng(7);
    const std::vector<std::vector<Int>> polys = {{1, 0, -1, -1}, {1, 1, -2, 8}, {1, 0, -21}, {1, 0, -10, 0, 1}};
    for (const auto& coeffs : polys) {
        auto k = NumberField::build(Poly::from_descending(coeffs));
        int n = k->degree();
        for (int t = 0; t < 20; ++t) {
            std::vector<Int> c;
            std::vector<Int> d;
            for (int i = 0; i < n; ++i) {
                c.push_back(Int(rng.range(-9, 9)));
                d.push_back(Int(rng.range(-9, 9)));
            }
            auto a = k->from_coeffs(c), b = k->from_coeffs(d);
            if (a.is_zero() || b.is_zero()) continue;
            CHECK(k->norm(k->mul(a, b)) == k->norm(a) * k->norm(b));
            CHECK(k->trace(k->add(a, b)) == k->trace(a) + k->trace(b));
            CHECK(k->mul(a, k->inv(a)) == k->one());
            CHECK(k->from_poly(k->to_poly(a)) == a);
            Poly cp = k->char_poly(a);
            CHECK(cp.degree() == n);
            CHECK(cp.coeff(0) * ((n % 2) ? -1 : 1) == k->norm(a));
            // a is a root of its characteristic polynomial.
            Elt acc = k->zero();
            for (int i = n; i >= 0; --i) acc = k->add(k->mul(acc, a), k->from_rat(cp.coeff(i)));
            CHECK(acc.is_zero());
            auto emb = k->embeddings(a);
            CHECK(emb.size() == static_cast<size_t>(k->r1() + k->r2()));
        }
    }
}

TEST_CASE("minkowski bound and T2 gram") {
    auto k = NumberField::build(Poly::from_descending({1, 0, 5}));
    CHECK(std::abs(k->minkowski_bound() - std::sqrt(20.0) * 4 / M_PI / 2) < 1e-9);
    auto g = k->t2_gram();
    CHECK(std::abs(g[0][0] - 2) < 1e-9);
    CHECK(std::abs(g[1][1] - 10) < 1e-9);
}
