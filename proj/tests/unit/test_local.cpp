#include "doctest.h"

#include "selmer/local.hpp"

using namespace selmer;

namespace {

FieldPtr rationals() { return NumberField::build(Poly::from_descending({1, 0})); }

WeierstrassModel model(const NumberField& K, std::array<long, 5> a) {
    std::array<Elt, 5> e;
    for (size_t i = 0; i < 5; ++i) e[i] = K.from_int(a[i]);
    return make_model(K, e);
}

LocalField prime_of(const FieldPtr& K, long p, size_t which = 0) { return local_fields(K, Int(p)).at(which); }

struct Setting {
    WeierstrassModel E;
    RelativeField R;
    std::unique_ptr<LocalSquareSpace> S;
    LocalCurve C;
    NicenessCertificate nice;
};

Setting setting(const FieldPtr& K, std::array<long, 5> a, const LocalField& Kv) {
    Setting s;
    s.E = model(*K, a);
    auto G = two_division_cubic(*K, s.E);
    s.R = absolutize(K, G);
    s.S = std::make_unique<LocalSquareSpace>(s.R, Kv);
    s.C = reduction_data(Kv, s.E);
    s.nice = niceness(Kv, s.C, Kv.valuation(cubic_discriminant(*K, G)), s.S->two_torsion());
    return s;
}

std::size_t log2_size(int n) { return n == 1 ? 0 : n == 2 ? 1 : 2; }

}  // namespace

TEST_CASE("Weierstrass invariants of small curves") {
    auto Q = rationals();
    auto E = model(*Q, {0, 0, 1, 0, 0});  // y^2 + y = x^3
    CHECK(E.disc == Q->from_int(-27));
    CHECK(E.c4.is_zero());
    auto E2 = model(*Q, {0, -1, 1, -10, -20});  // conductor 11
    CHECK(E2.disc == Q->from_int(-161051));     // -11^5
    CHECK(E2.c4 == Q->from_int(496));
    // y^2 + xy = x^3 + a6 has discriminant -a6 (1 + 432 a6).
    CHECK(model(*Q, {1, 0, 0, 0, 2}).disc == Q->from_int(-1730));
    // The two-division cubic of y^2 + y = x^3 + 4 x is X^3 + 64 X + 16.
    auto G = two_division_cubic(*Q, model(*Q, {0, 0, 1, 4, 0}));
    CHECK(G[0] == Q->from_int(16));
    CHECK(G[1] == Q->from_int(64));
    CHECK(G[2].is_zero());
    // disc(x^3 - x - 1) = -23
    std::array<Elt, 4> F{Q->from_int(-1), Q->from_int(-1), Q->zero(), Q->one()};
    CHECK(cubic_discriminant(*Q, F) == Q->from_int(-23));
}

TEST_CASE("local fields and square classes") {
    auto Q = rationals();
    auto Q2 = prime_of(Q, 2);
    CHECK(Q2.sq_dim() == 3);  // Q_2^x / squares has order 8
    CHECK(Q2.is_square(Q->from_int(17)));
    CHECK(Q2.is_square(Q->from_int(4 * 9)));
    CHECK_FALSE(Q2.is_square(Q->from_int(5)));
    CHECK_FALSE(Q2.is_square(Q->from_int(2)));
    CHECK(Q2.sq_class(Q->from_int(5)).get(0) == false);
    CHECK(Q2.sq_class(Q->from_int(5)) == Q2.sq_class(Q->from_int(13)));
    // boxtimes is the class of 5.
    CHECK(Q2.sq_class(Q->from_int(5)).slice(1, 2) == Q2.boxtimes());
    auto Q7 = prime_of(Q, 7);
    CHECK(Q7.sq_dim() == 2);
    CHECK(Q7.is_square(Q->from_int(2)));
    CHECK_FALSE(Q7.is_square(Q->from_int(3)));
    CHECK(Q7.is_square(Q->from_rat(make_rat(Int(1), Int(49)))));
    // Q_2(sqrt 3): ramified, units mod squares of dimension 3.
    auto K = NumberField::build(Poly::from_descending({1, 0, -3}));
    auto Kv = prime_of(K, 2);
    CHECK(Kv.e() == 2);
    CHECK(Kv.sq_dim() == 4);
    // Q_2(sqrt 21) at 2 is unramified of degree 2.
    auto K21 = NumberField::build(Poly::from_descending({1, 0, -21}));
    auto K21v = prime_of(K21, 2);
    CHECK(K21v.f() == 2);
    CHECK(K21v.sq_dim() == 4);
    CHECK(K21v.is_square(K21->from_int(5)));  // every unit of Z_2 is a norm... 5 = square in Q_2(sqrt -3)
}

TEST_CASE("unramified quadratic test") {
    auto Q = rationals();
    auto P = decompose_prime(*Q, Int(2))[0];
    CHECK(unramified_at(Q, P, {Int(5)}));
    CHECK_FALSE(unramified_at(Q, P, {Int(3)}));
    CHECK(unramified_at(Q, P, {Int(1)}));
    auto P3 = decompose_prime(*Q, Int(3))[0];
    CHECK(unramified_at(Q, P3, {Int(2)}));
}

TEST_CASE("reduction types") {
    auto Q = rationals();
    auto Q2 = prime_of(Q, 2);
    auto ss = reduction_data(Q2, model(*Q, {0, 0, 1, 0, 0}));
    CHECK(ss.type == Reduction::GoodSupersingular);
    CHECK(ss.v_disc == 0);
    auto ord = reduction_data(Q2, model(*Q, {1, 0, 0, 0, 1}));
    CHECK(ord.type == Reduction::GoodOrdinary);
    // A non-minimal model: y^2 + y = x^3 rescaled by u = 2.
    auto nm = reduction_data(Q2, model(*Q, {0, 0, 8, 0, 0}));
    CHECK(nm.model_steps == 1);
    CHECK(nm.v_disc == 0);
    CHECK(nm.type == Reduction::GoodSupersingular);
    // Conductor 11: split multiplicative at 11 with Tamagawa index 5.
    auto Q11 = prime_of(Q, 11);
    auto c11 = reduction_data(Q11, model(*Q, {0, -1, 1, -10, -20}));
    CHECK(c11.type == Reduction::SplitMultiplicative);
    CHECK(c11.v_disc == 5);
    CHECK(c11.tamagawa == 5);
    // Good reduction at odd primes: y^2 = x^3 + 1 is supersingular at 5 and 11, ordinary at 7 and 13.
    auto E = model(*Q, {0, 0, 0, 0, 1});
    CHECK(reduction_data(prime_of(Q, 5), E).type == Reduction::GoodSupersingular);
    CHECK(reduction_data(prime_of(Q, 11), E).type == Reduction::GoodSupersingular);
    CHECK(reduction_data(prime_of(Q, 7), E).type == Reduction::GoodOrdinary);
    CHECK(reduction_data(prime_of(Q, 13), E).type == Reduction::GoodOrdinary);
    // Non-minimal at 5: y^2 = x^3 + 5^4 x + 5^6 is y^2 = x^3 + x + 1 rescaled.
    auto m5 = reduction_data(prime_of(Q, 5), model(*Q, {0, 0, 0, 625, 15625}));
    CHECK(m5.model_steps == 1);
    CHECK(m5.v_disc == 0);
    // Additive: y^2 = x^3 + 3 at 3.
    CHECK(reduction_data(prime_of(Q, 3), model(*Q, {0, 0, 0, 0, 3})).type == Reduction::Additive);
    // y^2 + xy = x^3 + 2 over Q(sqrt 21): 2 is inert, v(Delta) = 1.
    auto K21 = NumberField::build(Poly::from_descending({1, 0, -21}));
    auto m = reduction_data(prime_of(K21, 2), model(*K21, {1, 0, 0, 0, 2}));
    CHECK(is_multiplicative(m.type));
    CHECK(m.v_disc == 1);
    CHECK(m.tamagawa == 1);
}

TEST_CASE("split test agrees with the square class of -c6 at odd primes") {
    auto Q = rationals();
    int checked = 0;
    for (long a4 = -6; a4 <= 6; ++a4)
        for (long a6 = -6; a6 <= 6; ++a6) {
            auto E = model(*Q, {1, 0, 1, a4, a6});
            if (E.disc.is_zero()) continue;
            for (long p : {3L, 5L, 7L, 11L, 13L}) {
                auto Kv = prime_of(Q, p);
                if (Kv.valuation(E.disc) == 0 || Kv.valuation(E.c4) != 0) continue;
                auto C = reduction_data(Kv, E);
                CHECK(C.type == (Kv.is_square(Q->neg(E.c6)) ? Reduction::SplitMultiplicative
                                                             : Reduction::NonsplitMultiplicative));
                ++checked;
            }
        }
    CHECK(checked > 20);
}

TEST_CASE("local condition sets have the predicted sizes") {
    auto Q = rationals();
    auto Q2 = prime_of(Q, 2);
    for (auto a : std::vector<std::array<long, 5>>{{1, -2, 0, 2, 3}, {1, -2, 0, -3, 2}, {0, 0, 1, 1, 0}, {1, -2, 0, -3, -1}}) {
        auto s = setting(Q, a, Q2);
        auto M = local_condition_sets(*s.S);
        size_t t = log2_size(s.S->two_torsion());
        CHECK(M.M1.size() == t);
        CHECK(M.M2.size() == t + 2);  // 2^{2d}, d = 1
        CHECK(s.S->norm_square().size() == 2 * t + 2);
        CHECK(f2_equal_spans(M.M1, case_formula_M1(*s.S)));
    }
    // Case 3 explicitly: four elements of M1 with one trivial component each.
    auto s = setting(Q, {1, -2, 0, 2, 3}, Q2);
    REQUIRE(s.S->two_torsion() == 4);
    auto M1 = local_condition_sets(*s.S).M1;
    int count = 0;
    f2_enumerate(M1, s.S->dim(), [&](const BitVec& x) {
        ++count;
        int trivial = 0;
        for (auto& c : s.S->components())
            if (x.slice(c.offset, c.dim()).is_zero()) ++trivial;
        CHECK((x.is_zero() ? trivial == 3 : trivial == 1));
    });
    CHECK(count == 4);
    // At odd primes M1 = M2.
    auto s7 = setting(Q, {0, 0, 0, 2, 1}, prime_of(Q, 59));
    auto M = local_condition_sets(*s7.S);
    CHECK(f2_equal_spans(M.M1, M.M2));
}

TEST_CASE("infinite places") {
    auto Q = rationals();
    auto R1 = absolutize(Q, {Q->from_int(-1), Q->from_int(-1), Q->zero(), Q->one()});
    CHECK(infinite_condition(R1, 0).size() == 1);
    auto R3 = absolutize(Q, {Q->from_int(1), Q->from_int(-3), Q->zero(), Q->one()});
    auto c = infinite_condition(R3, 0);
    REQUIRE(c.size() == 2);
    CHECK(c[1].to_string() == "011");
}

TEST_CASE("niceness criteria") {
    auto Q = rationals();
    auto Q2 = prime_of(Q, 2);
    // Supersingular family a1 = 0, a3 = 1 at 2: cubic ramified.
    auto ss = setting(Q, {0, 0, 1, 1, 0}, Q2);
    CHECK(ss.nice.verdict == Verdict::Nice);
    CHECK(ss.S->two_torsion() == 1);
    CHECK(niceness(Q2, ss.C, 16, 2).criterion == "supersingular-cubic");
    auto ord = setting(Q, {1, -2, 0, 2, 3}, Q2);
    CHECK(ord.nice.criterion == "good-ordinary");
    auto mult = setting(Q, {1, -2, 0, -3, -1}, Q2);
    CHECK(mult.nice.criterion == "multiplicative-odd-disc");
    auto undecided = setting(Q, {1, -2, 0, -1, -3}, Q2);
    CHECK(undecided.nice.verdict == Verdict::Undetermined);
    // Odd primes: v(D) <= 1, odd Tamagawa index, and the split/even exception.
    auto Q11 = prime_of(Q, 11);
    auto c11 = reduction_data(Q11, model(*Q, {0, -1, 1, -10, -20}));
    CHECK(niceness(Q11, c11, 5, 2).criterion == "odd-tamagawa");
    LocalCurve even_split = c11;
    even_split.tamagawa = 4;
    CHECK(niceness(Q11, even_split, 4, 2).verdict == Verdict::NotNice);
    CHECK(niceness(Q11, even_split, 1, 2).criterion == "disc-valuation");
    CHECK(niceness(Q11, even_split, 4, 1).criterion == "trivial-2-torsion");
}

TEST_CASE("Kummer image oracle over Q_2") {
    auto Q = rationals();
    auto Q2 = prime_of(Q, 2);
    std::vector<std::array<long, 5>> curves{{1, -2, 0, 2, 3}, {1, -1, 0, 0, 3},  {1, -2, 0, -3, 2}, {0, 0, 1, 1, 0},
                                            {0, 1, 1, -2, 3}, {0, -1, 1, 0, 1},  {1, -2, 0, -3, -1}, {1, 0, 0, 0, 2},
                                            {1, 0, 0, 0, 10}, {1, -2, 0, -2, -2}};
    for (auto& a : curves) {
        auto s = setting(Q, a, Q2);
        CAPTURE(reduction_name(s.C.type));
        REQUIRE(s.nice.verdict == Verdict::Nice);
        auto img = kummer_image_oracle(*s.S);
        auto M = local_condition_sets(*s.S);
        CHECK(img.basis.size() == 1 + log2_size(s.S->two_torsion()));
        CHECK(f2_subspace(M.M1, img.basis));
        CHECK(f2_subspace(img.basis, M.M2));
        if (s.S->two_torsion() == 1)
            for (auto& x : img.samples)
                for (size_t i = 0; i < s.S->components().size(); ++i) CHECK_FALSE(x.get(s.S->components()[i].offset));
    }
}

TEST_CASE("ordinary split image is the explicit set") {
    auto Q = rationals();
    auto Q2 = prime_of(Q, 2);
    for (auto a : std::vector<std::array<long, 5>>{{1, -2, 0, 2, 3}, {1, -1, 0, 0, 3}, {1, -1, 0, 2, -1}}) {
        auto s = setting(Q, a, Q2);
        REQUIRE(s.S->two_torsion() == 4);
        const auto& comps = s.S->components();
        // The component of the unit root alpha.
        size_t ia = 3;
        for (size_t i = 0; i < 3; ++i)
            if (valuation(*s.R.L, comps[i].w, s.R.x_in_L) == 0) ia = i;
        REQUIRE(ia < 3);
        size_t ig = (ia + 1) % 3;
        auto drop = [&](BitVec x) {
            for (size_t t = 0; t < comps[ia].dim(); ++t) x.set(comps[ia].offset + t, false);
            return x;
        };
        std::vector<BitVec> expected;
        for (long u : {-1L, 5L}) expected.push_back(drop(s.S->classify(s.R.L->from_int(u))));
        expected.push_back(s.S->embed_unit(ia, comps[ia].boxtimes) ^ s.S->embed_unit(ig, comps[ig].boxtimes));
        auto img = kummer_image_oracle(*s.S);
        CHECK(f2_equal_spans(img.basis, expected));
    }
}

TEST_CASE("multiplicative image with v(D) odd is the norm kernel of the quadratic component") {
    auto Q = rationals();
    auto Q2 = prime_of(Q, 2);
    for (auto a : std::vector<std::array<long, 5>>{{1, -2, 0, -3, -1}, {1, 0, 0, 0, 2}, {1, 0, 0, 0, 10}}) {
        auto s = setting(Q, a, Q2);
        REQUIRE(s.S->two_torsion() == 2);
        const auto& comps = s.S->components();
        size_t iq = comps[0].e * comps[0].f == 2 ? 0 : 1;
        std::vector<BitVec> units_w;
        for (size_t t = 0; t < comps[iq].units->dim(); ++t)
            units_w.push_back(BitVec::unit(s.S->dim(), comps[iq].offset + 1 + t));
        auto expected = f2_intersect(units_w, s.S->norm_square(), s.S->dim());
        CHECK(expected.size() == 2);
        CHECK(f2_equal_spans(kummer_image_oracle(*s.S).basis, expected));
    }
}

TEST_CASE("Kummer map is a homomorphism on rational points") {
    // y^2 = x^3 + 2x + 1 through P = (0, 1) and Q = (1, 2); P - Q = (8, 23).
    auto Q = rationals();
    auto E = model(*Q, {0, 0, 0, 2, 1});
    auto R = absolutize(Q, two_division_cubic(*Q, E));
    auto delta = [&](const LocalSquareSpace& S, long x) {
        return S.classify(R.L->sub(R.L->from_int(4 * x), R.x_in_L));
    };
    for (long p : {2L, 3L, 5L, 59L}) {
        LocalSquareSpace S(R, prime_of(Q, p));
        CAPTURE(p);
        CHECK((delta(S, 0) ^ delta(S, 1)) == delta(S, 8));
        // 2P = (1, -2) is Q reflected: its class equals delta(Q).
        CHECK((delta(S, 0) ^ delta(S, 0)).is_zero());
        // Classes have square norm.
        CHECK(S.norm_map().apply(delta(S, 8)).is_zero());
    }
}

TEST_CASE("even completions of degree two") {
    auto K3 = NumberField::build(Poly::from_descending({1, 0, -3}));
    auto s = setting(K3, {0, 0, 1, 1, 0}, prime_of(K3, 2));
    CHECK(s.C.type == Reduction::GoodSupersingular);
    CHECK(s.nice.verdict == Verdict::Nice);
    auto img = kummer_image_oracle(*s.S);
    CHECK(img.basis.size() == 2);
    auto M = local_condition_sets(*s.S);
    CHECK(M.M2.size() == 4);
    CHECK(f2_subspace(img.basis, M.M2));
    auto K21 = NumberField::build(Poly::from_descending({1, 0, -21}));
    auto m = setting(K21, {1, 0, 0, 0, 2}, prime_of(K21, 2));
    CHECK(m.nice.criterion == "multiplicative-odd-disc");
    auto img2 = kummer_image_oracle(*m.S);
    auto M2 = local_condition_sets(*m.S);
    CHECK(img2.basis.size() == 3);
    CHECK(f2_subspace(M2.M1, img2.basis));
    CHECK(f2_subspace(img2.basis, M2.M2));
}
