#include "selmer/local.hpp"

#include <algorithm>
#include <climits>
#include <functional>

namespace selmer {

namespace {

std::vector<Int> integral_coords(const Elt& a) {
    if (!a.is_integral()) throw MathError("expected an integral element");
    return a.c;
}

bool all_zero(const std::vector<Int>& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& z) { return z == 0; });
}

// An element of P with v_P = 1.
std::vector<Int> uniformizer(const NumberField& K, const PrimeIdeal& P) {
    size_t n = static_cast<size_t>(K.degree());
    std::vector<std::vector<Int>> basis;
    for (size_t i = 0; i < n; ++i) {
        std::vector<Int> row(n);
        for (size_t j = 0; j < n; ++j) row[j] = P.ideal.H(i, j);
        basis.push_back(row);
    }
    if (P.two_element && !P.gen.is_zero() && P.gen.is_integral() && valuation_int(K, P, P.gen.c) == 1)
        return P.gen.c;
    for (auto& b : basis)
        if (!all_zero(b) && valuation_int(K, P, b) == 1) return b;
    Rng rng(17);
    for (int attempt = 0; attempt < 2000; ++attempt) {
        std::vector<Int> x(n, Int(0));
        for (auto& b : basis) {
            long c = rng.range(-2, 2);
            for (size_t j = 0; j < n; ++j) x[j] += c * b[j];
        }
        if (!all_zero(x) && valuation_int(K, P, x) == 1) return x;
    }
    throw MathError("no uniformizer found for " + P.label);
}

std::vector<Int> scale_int(std::vector<Int> a, const Int& s) {
    for (auto& c : a) c *= s;
    return a;
}

std::vector<Int> add_int(std::vector<Int> a, const std::vector<Int>& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

// Incremental F_2 span with reduced pivots.
struct SpanBuilder {
    std::vector<BitVec> rows;
    std::vector<size_t> pivots;
    bool add(BitVec v) {
        for (size_t i = 0; i < rows.size(); ++i)
            if (v.get(pivots[i])) v ^= rows[i];
        if (v.is_zero()) return false;
        size_t pv = v.lowest_set();
        for (auto& r : rows)
            if (r.get(pv)) r ^= v;
        rows.push_back(v);
        pivots.push_back(pv);
        return true;
    }
};

}  // namespace

// ---------------------------------------------------------------- LocalField

LocalField::LocalField(FieldPtr K, PrimeIdeal P) : K_(std::move(K)), P_(std::move(P)) {
    units_ = std::make_shared<UnitSquareClasses>(K_, P_, P_.p == 2 ? 2 * P_.e + 1 : 1);
    residue_ = std::make_shared<ResidueRing>(K_, P_.ideal);
    boxtimes_ = BitVec(units_->dim());
    if (P_.p != 2) {
        boxtimes_.set(0);
        return;
    }
    // Units 1 + 4t span {1, boxtimes} modulo squares.
    SpanBuilder span;
    size_t q = residue_->size().get_ui();
    for (size_t i = 0; i < q; ++i) {
        auto t = residue_->element(i);
        auto u = scale_int(t, Int(4));
        u[0] += 1;
        span.add(units_->classify(u));
    }
    if (span.rows.size() != 1) throw MathError("LocalField: units 1 + 4O do not give a single class");
    boxtimes_ = span.rows[0];
}

int LocalField::valuation(const Elt& a) const {
    if (a.is_zero()) return INT_MAX;
    return selmer::valuation(*K_, P_, a);
}

BitVec LocalField::sq_class(const Elt& a) const {
    if (a.is_zero()) throw MathError("sq_class of zero");
    std::vector<Int> c = scale_int(a.c, a.den);  // a * den^2
    int v = valuation_int(*K_, P_, c);
    BitVec u = units_->classify(unit_part(*K_, P_, c));
    BitVec r(1 + u.size());
    if (v % 2) r.set(0);
    for (size_t i = 0; i < u.size(); ++i) r.set(1 + i, u.get(i));
    return r;
}

std::vector<LocalField> local_fields(const FieldPtr& K, const Int& p) {
    std::vector<LocalField> out;
    for (auto& P : decompose_prime(*K, p)) out.emplace_back(K, P);
    return out;
}

// ---------------------------------------------------------------- models

WeierstrassModel make_model(const NumberField& K, const std::array<Elt, 5>& a) {
    WeierstrassModel E;
    E.a = a;
    auto [a1, a2, a3, a4, a6] = a;
    auto I = [&](long v) { return K.from_int(v); };
    auto mul = [&](const Elt& x, const Elt& y) { return K.mul(x, y); };
    auto add = [&](const Elt& x, const Elt& y) { return K.add(x, y); };
    auto sub = [&](const Elt& x, const Elt& y) { return K.sub(x, y); };
    E.b2 = add(mul(a1, a1), mul(I(4), a2));
    E.b4 = add(mul(I(2), a4), mul(a1, a3));
    E.b6 = add(mul(a3, a3), mul(I(4), a6));
    E.b8 = sub(add(add(mul(mul(a1, a1), a6), mul(I(4), mul(a2, a6))), mul(a2, mul(a3, a3))),
               add(mul(a1, mul(a3, a4)), mul(a4, a4)));
    E.c4 = sub(mul(E.b2, E.b2), mul(I(24), E.b4));
    E.c6 = add(K.neg(mul(E.b2, mul(E.b2, E.b2))), sub(mul(I(36), mul(E.b2, E.b4)), mul(I(216), E.b6)));
    // Delta = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
    E.disc = K.neg(mul(mul(E.b2, E.b2), E.b8));
    E.disc = sub(E.disc, mul(I(8), mul(E.b4, mul(E.b4, E.b4))));
    E.disc = sub(E.disc, mul(I(27), mul(E.b6, E.b6)));
    E.disc = add(E.disc, mul(I(9), mul(E.b2, mul(E.b4, E.b6))));
    return E;
}

std::array<Elt, 4> two_division_cubic(const NumberField& K, const WeierstrassModel& E) {
    return {K.mul(K.from_int(16), E.b6), K.mul(K.from_int(8), E.b4), E.b2, K.one()};
}

Elt cubic_discriminant(const NumberField& K, const std::array<Elt, 4>& F) {
    // x^3 + a x^2 + b x + c: a^2 b^2 - 4 b^3 - 4 a^3 c - 27 c^2 + 18 a b c
    const Elt &c = F[0], &b = F[1], &a = F[2];
    auto m = [&](std::initializer_list<Elt> xs) {
        Elt r = K.one();
        for (auto& x : xs) r = K.mul(r, x);
        return r;
    };
    Elt d = m({a, a, b, b});
    d = K.sub(d, m({K.from_int(4), b, b, b}));
    d = K.sub(d, m({K.from_int(4), a, a, a, c}));
    d = K.sub(d, m({K.from_int(27), c, c}));
    d = K.add(d, m({K.from_int(18), a, b, c}));
    return d;
}

std::string reduction_name(Reduction r) {
    switch (r) {
        case Reduction::GoodOrdinary: return "good-ordinary";
        case Reduction::GoodSupersingular: return "good-supersingular";
        case Reduction::Good: return "good";
        case Reduction::SplitMultiplicative: return "mult-split";
        case Reduction::NonsplitMultiplicative: return "mult-nonsplit";
        case Reduction::Additive: return "additive";
    }
    return "?";
}

namespace {

// One rescaling step x = u^2 x' + r, y = u^3 y' + u^2 s x' + t with v(u) = 1,
// searched over r mod P^2, s mod P, t mod P^3.  Returns true and updates `a`
// when the rescaled model is integral.
bool rescale_once(const LocalField& Kv, std::array<Elt, 5>& a) {
    const NumberField& K = *Kv.field();
    const PrimeIdeal& P = Kv.prime();
    ResidueRing R1(Kv.field(), P.ideal), R2(Kv.field(), ideal_pow(K, P.ideal, 2)),
        R3(Kv.field(), ideal_pow(K, P.ideal, 3));
    if (R3.size() > Int(1u << 22)) throw MathError("minimal model search: residue ring too large");
    auto [a1, a2, a3, a4, a6] = a;
    auto I = [&](long v) { return K.from_int(v); };
    auto ok = [&](const Elt& x, int k) { return Kv.valuation(x) >= k; };
    size_t q1 = R1.size().get_ui(), q2 = R2.size().get_ui(), q3 = R3.size().get_ui();
    for (size_t is = 0; is < q1; ++is) {
        Elt s = K.from_coeffs(R1.element(is));
        Elt e1 = K.add(a1, K.mul(I(2), s));
        if (!ok(e1, 1)) continue;
        for (size_t ir = 0; ir < q2; ++ir) {
            Elt r = K.from_coeffs(R2.element(ir));
            Elt e2 = K.sub(K.add(K.sub(a2, K.mul(s, a1)), K.mul(I(3), r)), K.mul(s, s));
            if (!ok(e2, 2)) continue;
            for (size_t it = 0; it < q3; ++it) {
                Elt t = K.from_coeffs(R3.element(it));
                Elt e3 = K.add(K.add(a3, K.mul(r, a1)), K.mul(I(2), t));
                if (!ok(e3, 3)) continue;
                // a4 - s a3 + 2 r a2 - (t + r s) a1 + 3 r^2 - 2 s t
                Elt e4 = K.sub(a4, K.mul(s, a3));
                e4 = K.add(e4, K.mul(I(2), K.mul(r, a2)));
                e4 = K.sub(e4, K.mul(K.add(t, K.mul(r, s)), a1));
                e4 = K.add(e4, K.mul(I(3), K.mul(r, r)));
                e4 = K.sub(e4, K.mul(I(2), K.mul(s, t)));
                if (!ok(e4, 4)) continue;
                // a6 + r a4 + r^2 a2 + r^3 - t a3 - t^2 - r t a1
                Elt e6 = K.add(a6, K.mul(r, a4));
                e6 = K.add(e6, K.mul(K.mul(r, r), a2));
                e6 = K.add(e6, K.mul(r, K.mul(r, r)));
                e6 = K.sub(e6, K.mul(t, a3));
                e6 = K.sub(e6, K.mul(t, t));
                e6 = K.sub(e6, K.mul(r, K.mul(t, a1)));
                if (!ok(e6, 6)) continue;
                std::array<Elt, 5> num{e1, e2, e3, e4, e6};
                const int w[5] = {1, 2, 3, 4, 6};
                for (int i = 0; i < 5; ++i)
                    a[static_cast<size_t>(i)] =
                        num[static_cast<size_t>(i)].is_zero()
                            ? K.zero()
                            : K.from_coeffs(divide_by_uniformizer(K, P, integral_coords(num[static_cast<size_t>(i)]), w[i]));
                return true;
            }
        }
    }
    return false;
}

// Reductions mod P of integral elements.
struct ResidueArith {
    const ResidueRing& R;
    const NumberField& K;
    std::vector<Int> v(const Elt& a) const { return R.reduce(integral_coords(a)); }
    std::vector<Int> add(const std::vector<Int>& a, const std::vector<Int>& b) const { return R.reduce(add_int(a, b)); }
    std::vector<Int> mul(const std::vector<Int>& a, const std::vector<Int>& b) const { return R.mul(a, b); }
    std::vector<Int> neg(const std::vector<Int>& a) const { return R.reduce(scale_int(a, Int(-1))); }
    std::vector<Int> c(long x) const {
        std::vector<Int> r(static_cast<size_t>(K.degree()), Int(0));
        r[0] = x;
        return R.reduce(r);
    }
};

// Split multiplicative reduction: the tangent directions at the node are
// defined over the residue field.  Enumerates the residue field.
bool node_is_split(const LocalField& Kv, const std::array<Elt, 5>& a) {
    const ResidueRing& R = Kv.residue_field();
    ResidueArith A{R, *Kv.field()};
    auto a1 = A.v(a[0]), a2 = A.v(a[1]), a3 = A.v(a[2]), a4 = A.v(a[3]), a6 = A.v(a[4]);
    size_t q = R.size().get_ui();
    for (size_t ix = 0; ix < q; ++ix) {
        auto x = R.element(ix);
        auto x2 = A.mul(x, x);
        // d/dx: a1 y - 3 x^2 - 2 a2 x - a4 ; d/dy: 2 y + a1 x + a3
        for (size_t iy = 0; iy < q; ++iy) {
            auto y = R.element(iy);
            auto fy = A.add(A.add(A.mul(A.c(2), y), A.mul(a1, x)), a3);
            if (!R.is_zero(fy)) continue;
            auto fx = A.add(A.add(A.mul(a1, y), A.neg(A.mul(A.c(3), x2))), A.neg(A.add(A.mul(A.mul(A.c(2), a2), x), a4)));
            if (!R.is_zero(fx)) continue;
            auto f = A.add(A.add(A.mul(y, y), A.mul(A.mul(a1, x), y)), A.mul(a3, y));
            auto rhs = A.add(A.add(A.add(A.mul(x2, x), A.mul(a2, x2)), A.mul(a4, x)), a6);
            if (!R.is_zero(A.add(f, A.neg(rhs)))) continue;
            // Tangent cone Y^2 + a1 X Y - (3 x + a2) X^2.
            auto c0 = A.neg(A.add(A.mul(A.c(3), x), a2));
            for (size_t it = 0; it < q; ++it) {
                auto T = R.element(it);
                auto val = A.add(A.add(A.mul(T, T), A.mul(a1, T)), c0);
                if (R.is_zero(val)) return true;
            }
            return false;
        }
    }
    throw MathError("node_is_split: no singular point found on the reduction");
}

// Ordinary iff the trace of Frobenius is prime to p.
std::optional<bool> odd_good_ordinary(const LocalField& Kv, const std::array<Elt, 5>& a) {
    const NumberField& K = *Kv.field();
    const PrimeIdeal& P = Kv.prime();
    Int q = Kv.residue_size();
    // 4 * (x^3 + a2 x^2 + a4 x + a6) + (a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    WeierstrassModel E = make_model(K, a);
    if (P.f == 1 && P.p < Int(1u << 24)) {
        std::uint64_t p = P.p.get_ui();
        auto red = [&](const Elt& x) { return reduce_mod_prime(P, integral_coords(x)); };
        std::uint64_t b2 = red(E.b2), b4 = red(E.b4), b6 = red(E.b6);
        std::vector<signed char> chi(p, -1);
        chi[0] = 0;
        for (std::uint64_t y = 1; y < p; ++y) chi[(y * y) % p] = 1;
        long long sum = 0;
        for (std::uint64_t x = 0; x < p; ++x) {
            unsigned __int128 v = 4;
            v = (v * x % p) * x % p * x % p;
            v += static_cast<unsigned __int128>(b2) * x % p * x % p;
            v += static_cast<unsigned __int128>(2 * b4 % p) * x % p;
            v += b6;
            sum += chi[static_cast<std::uint64_t>(v % p)];
        }
        // #E(F_p) = p + 1 + sum, trace = -sum.
        return sum % static_cast<long long>(p) != 0;
    }
    if (q > Int(1u << 16)) return std::nullopt;
    const ResidueRing& R = Kv.residue_field();
    ResidueArith A{R, K};
    auto b2 = A.v(E.b2), b4 = A.v(E.b4), b6 = A.v(E.b6);
    Int half = (q - 1) / 2;
    long long sum = 0;
    size_t n = q.get_ui();
    for (size_t ix = 0; ix < n; ++ix) {
        auto x = R.element(ix);
        auto x2 = A.mul(x, x);
        auto v = A.add(A.add(A.mul(A.c(4), A.mul(x2, x)), A.mul(b2, x2)), A.add(A.mul(A.mul(A.c(2), b4), x), b6));
        if (R.is_zero(v)) continue;
        auto r = R.pow(v, half);
        r[0] -= 1;
        sum += R.is_zero(r) ? 1 : -1;
    }
    Int s = static_cast<long>(sum);
    return s % P.p != 0;
}

}  // namespace

LocalCurve reduction_data(const LocalField& Kv, const WeierstrassModel& E0) {
    const NumberField& K = *Kv.field();
    const PrimeIdeal& P = Kv.prime();
    for (auto& x : E0.a)
        if (!x.is_integral()) throw MathError("reduction_data: model is not integral");
    if (E0.disc.is_zero()) throw MathError("reduction_data: singular curve");
    LocalCurve C;
    std::array<Elt, 5> a = E0.a;
    WeierstrassModel E = E0;
    if (P.p >= 5) {
        if (Kv.valuation(E.disc) >= 12 && Kv.valuation(E.c4) >= 4) {
            // Short model y^2 = x^3 - 27 c4 x - 54 c6, rescaled while possible.
            a = {K.zero(), K.zero(), K.zero(), K.mul(K.from_int(-27), E.c4), K.mul(K.from_int(-54), E.c6)};
            while (Kv.valuation(a[3]) >= 4 && Kv.valuation(a[4]) >= 6) {
                for (int idx : {3, 4}) {
                    int w = idx == 3 ? 4 : 6;
                    if (!a[static_cast<size_t>(idx)].is_zero())
                        a[static_cast<size_t>(idx)] = K.from_coeffs(
                            divide_by_uniformizer(K, P, integral_coords(a[static_cast<size_t>(idx)]), w));
                }
                ++C.model_steps;
            }
            E = make_model(K, a);
        }
    } else {
        while (Kv.valuation(E.disc) >= 12 && rescale_once(Kv, a)) {
            ++C.model_steps;
            E = make_model(K, a);
        }
    }
    C.model = E;
    C.v_disc = Kv.valuation(E.disc);
    C.v_c4 = Kv.valuation(E.c4);
    if (C.v_disc == 0) {
        C.tamagawa = 1;
        if (P.p == 2) {
            C.type = Kv.valuation(E.a[0]) == 0 ? Reduction::GoodOrdinary : Reduction::GoodSupersingular;
        } else {
            auto ord = odd_good_ordinary(Kv, E.a);
            C.type = !ord ? Reduction::Good : (*ord ? Reduction::GoodOrdinary : Reduction::GoodSupersingular);
        }
    } else if (C.v_c4 == 0) {
        bool split;
        if (Kv.residue_size() <= Int(4096)) {
            split = node_is_split(Kv, E.a);
        } else {
            split = Kv.is_square(K.neg(E.c6));
        }
        C.type = split ? Reduction::SplitMultiplicative : Reduction::NonsplitMultiplicative;
        if (split) C.tamagawa = C.v_disc;
        else C.tamagawa = C.v_disc % 2 == 0 ? 2 : 1;
    } else {
        C.type = Reduction::Additive;
    }
    return C;
}

// ---------------------------------------------------------------- L_v

LocalSquareSpace::LocalSquareSpace(const RelativeField& R, const LocalField& Kv, std::uint64_t seed)
    : R_(R), Kv_(Kv) {
    const NumberField& L = *R.L;
    const NumberField& K = *R.K;
    const PrimeIdeal& P = Kv.prime();
    auto Pbasis = ideal_basis(K, P.ideal);
    for (auto& w : decompose_prime(L, P.p)) {
        bool above = true;
        for (auto& b : Pbasis) {
            Elt bl = embed_base(R, b);
            if (!bl.is_zero() && valuation(L, w, bl) <= 0) {
                above = false;
                break;
            }
        }
        if (!above) continue;
        LocalComponent c;
        c.w = w;
        c.e = w.e / P.e;
        c.f = w.f / P.f;
        c.units = std::make_shared<UnitSquareClasses>(R.L, w, P.p == 2 ? 2 * w.e + 1 : 1);
        c.boxtimes = BitVec(c.units->dim());
        if (P.p != 2) {
            c.boxtimes.set(0);
        } else {
            SpanBuilder span;
            ResidueRing Rw(R.L, w.ideal);
            size_t q = Rw.size().get_ui();
            for (size_t i = 0; i < q; ++i) {
                auto u = scale_int(Rw.element(i), Int(4));
                u[0] += 1;
                span.add(c.units->classify(u));
            }
            if (span.rows.size() != 1) throw MathError("LocalSquareSpace: units 1 + 4O do not give a single class");
            c.boxtimes = span.rows[0];
        }
        c.offset = dim_;
        dim_ += c.dim();
        comps_.push_back(std::move(c));
    }
    int deg = 0;
    for (auto& c : comps_) deg += c.e * c.f;
    if (deg != 3) throw MathError("LocalSquareSpace: local degrees do not add up to 3");

    // Norm map, determined on random elements of the ideals prod w^{a_w}.
    std::vector<FractionalIdeal> powers;
    size_t m = comps_.size();
    for (size_t mask = 0; mask < (size_t{1} << m); ++mask) {
        FractionalIdeal I = ideal_unit(L);
        for (size_t i = 0; i < m; ++i)
            if (mask >> i & 1) I = ideal_mul(L, I, comps_[i].w.ideal);
        powers.push_back(I);
    }
    int kmax = 1;
    for (auto& c : comps_) kmax = std::max(kmax, 2 * c.w.e + 2);
    Int range = 1;
    for (int i = 0; i < kmax; ++i) range *= P.p;
    Rng rng(seed ^ 0x6c6f63616cULL);
    std::vector<BitVec> rows, images;
    size_t kdim = Kv.sq_dim();
    norm_ = F2Map(dim_, kdim);
    std::vector<std::pair<BitVec, BitVec>> pairs;
    for (int attempt = 0; attempt < 4000 && rows.size() < dim_; ++attempt) {
        const auto& I = powers[static_cast<size_t>(attempt) % powers.size()];
        auto basis = ideal_basis(L, I);
        Elt alpha = L.zero();
        for (auto& b : basis) alpha = L.add(alpha, L.scale(b, Rat(rng.big_below(range))));
        if (alpha.is_zero()) continue;
        BitVec x = classify(alpha);
        BitVec nx = Kv.sq_class(relative_norm(R, alpha));
        if (f2_in_span(rows, x)) {
            pairs.emplace_back(x, nx);
            continue;
        }
        rows.push_back(x);
        images.push_back(nx);
    }
    if (rows.size() < dim_) throw MathError("LocalSquareSpace: random elements do not span L_v^x / squares");
    for (size_t j = 0; j < dim_; ++j) {
        auto coef = f2_solve(rows, BitVec::unit(dim_, j));
        BitVec img(kdim);
        for (size_t i = 0; i < rows.size(); ++i)
            if (coef->get(i)) img ^= images[i];
        norm_.images[j] = img;
    }
    for (auto& [x, nx] : pairs)
        if (norm_.apply(x) != nx) throw MathError("LocalSquareSpace: norm map is not linear on samples");
}

int LocalSquareSpace::roots_in_base() const {
    int r = 0;
    for (auto& c : comps_)
        if (c.e * c.f == 1) ++r;
    return r;
}

BitVec LocalSquareSpace::classify(const Elt& a) const {
    if (a.is_zero()) throw MathError("classify of zero");
    const NumberField& L = *R_.L;
    std::vector<Int> c = scale_int(a.c, a.den);
    BitVec out(dim_);
    for (auto& comp : comps_) {
        int v = valuation_int(L, comp.w, c);
        if (v % 2) out.set(comp.offset);
        BitVec u = comp.units->classify(unit_part(L, comp.w, c));
        for (size_t i = 0; i < u.size(); ++i) out.set(comp.offset + 1 + i, u.get(i));
    }
    return out;
}

BitVec LocalSquareSpace::embed_unit(std::size_t i, const BitVec& unit) const {
    BitVec out(dim_);
    for (size_t t = 0; t < unit.size(); ++t) out.set(comps_[i].offset + 1 + t, unit.get(t));
    return out;
}

BitVec LocalSquareSpace::embed_valuation(std::size_t i) const { return BitVec::unit(dim_, comps_[i].offset); }

std::vector<BitVec> LocalSquareSpace::norm_square() const { return f2_kernel(norm_); }

std::vector<BitVec> LocalSquareSpace::unit_classes() const {
    std::vector<BitVec> out;
    for (auto& c : comps_)
        for (size_t t = 0; t < c.units->dim(); ++t) out.push_back(BitVec::unit(dim_, c.offset + 1 + t));
    return out;
}

std::vector<BitVec> LocalSquareSpace::unramified() const {
    if (!Kv_.even()) return unit_classes();
    std::vector<BitVec> out;
    for (size_t i = 0; i < comps_.size(); ++i) out.push_back(embed_unit(i, comps_[i].boxtimes));
    return out;
}

LocalConditions local_condition_sets(const LocalSquareSpace& S) {
    LocalConditions M;
    auto ns = S.norm_square();
    M.M2 = f2_intersect(S.unit_classes(), ns, S.dim());
    M.M1 = f2_intersect(S.unramified(), ns, S.dim());
    return M;
}

std::vector<BitVec> case_formula_M1(const LocalSquareSpace& S) {
    const auto& comps = S.components();
    if (!S.base().even()) return local_condition_sets(S).M2;
    if (comps.size() == 1) return {};
    if (comps.size() == 2) {
        size_t i0 = comps[0].e * comps[0].f == 1 ? 0 : 1, i1 = 1 - i0;
        BitVec second = S.embed_unit(i1, comps[i1].boxtimes);
        if (comps[i1].e == 1) return {S.embed_unit(i0, comps[i0].boxtimes) ^ second};
        return {second};
    }
    return {S.embed_unit(1, comps[1].boxtimes) ^ S.embed_unit(2, comps[2].boxtimes),
            S.embed_unit(0, comps[0].boxtimes) ^ S.embed_unit(2, comps[2].boxtimes)};
}

std::vector<BitVec> infinite_condition(const RelativeField& R, int place) {
    const auto& info = R.places.at(static_cast<size_t>(place));
    if (info.ramified) return {BitVec(1)};
    return {BitVec(3), BitVec::from_string("011")};
}

// ---------------------------------------------------------------- niceness

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Nice: return "nice";
        case Verdict::NotNice: return "not-nice";
        case Verdict::Undetermined: return "undetermined";
    }
    return "?";
}

NicenessCertificate niceness(const LocalField& Kv, const LocalCurve& C, int v_D, int two_torsion) {
    NicenessCertificate cert;
    auto nice = [&](const std::string& id, const std::string& why) {
        cert.verdict = Verdict::Nice;
        cert.criterion = id;
        cert.detail = why;
        return cert;
    };
    if (two_torsion == 1) return nice("trivial-2-torsion", "|E(K_v)[2]| = 1");
    if (v_D <= 1) return nice("disc-valuation", "v(D) = " + std::to_string(v_D) + " <= 1");
    if (!Kv.even()) {
        if (C.tamagawa && *C.tamagawa % 2 == 1)
            return nice("odd-tamagawa", "[E(K_v) : E_0(K_v)] = " + std::to_string(*C.tamagawa) + " is odd");
        if (C.type == Reduction::SplitMultiplicative && C.tamagawa && *C.tamagawa % 2 == 0) {
            cert.verdict = Verdict::NotNice;
            cert.criterion = "split-even-tamagawa";
            cert.detail = "split multiplicative with even Tamagawa index";
            return cert;
        }
        cert.detail = "no criterion applies at odd v (" + reduction_name(C.type) + ")";
        return cert;
    }
    if (C.type == Reduction::GoodOrdinary) return nice("good-ordinary", "ordinary reduction at an even prime");
    if (C.type == Reduction::GoodSupersingular) {
        int e = Kv.e();
        int va1 = Kv.valuation(C.model.a[0]);
        bool a1_zero = va1 == INT_MAX;
        if (e % 3 != 0 && (a1_zero || va1 % 2 == 1 || 3L * va1 >= 2L * e))
            return nice("supersingular-cubic", "supersingular, 3 does not divide e = " + std::to_string(e) +
                                                   ", v(a1) = " + (a1_zero ? std::string("inf") : std::to_string(va1)));
        cert.detail = "supersingular outside the cubic-ramified range";
        return cert;
    }
    if (is_multiplicative(C.type)) {
        if (v_D % 2 == 1) return nice("multiplicative-odd-disc", "multiplicative with v(D) = " + std::to_string(v_D) + " odd");
        cert.detail = "multiplicative with v(D) even";
        return cert;
    }
    cert.detail = "no criterion applies at even v (" + reduction_name(C.type) + ")";
    return cert;
}

// ---------------------------------------------------------------- Kummer image

KummerImage kummer_image_oracle(const LocalSquareSpace& S, const KummerOptions& opts) {
    const RelativeField& R = S.relative();
    const LocalField& Kv = S.base();
    const NumberField& K = *R.K;
    const NumberField& L = *R.L;
    const PrimeIdeal& P = Kv.prime();
    KummerImage out;
    int t = S.two_torsion() == 1 ? 0 : (S.two_torsion() == 2 ? 1 : 2);
    out.target_dim = static_cast<size_t>(t + (Kv.even() ? Kv.degree() : 0));

    Elt pi = K.from_coeffs(uniformizer(K, P));
    Elt theta = R.x_in_L;
    SpanBuilder span;
    const size_t kMinPoints = 48;
    const size_t kSamples = 16;
    int kmax = 2 * Kv.e() + 3;

    auto try_point = [&](const Elt& u, int k) {
        ++out.candidates;
        // pi^{6k} F(u / pi^{2k}) = u^3 + f2 u^2 pi^{2k} + f1 u pi^{4k} + f0 pi^{6k}
        Elt p2 = K.pow(pi, 2L * k);
        Elt val = K.mul(u, K.mul(u, u));
        val = K.add(val, K.mul(R.F[2], K.mul(K.mul(u, u), p2)));
        val = K.add(val, K.mul(R.F[1], K.mul(u, K.mul(p2, p2))));
        val = K.add(val, K.mul(R.F[0], K.mul(p2, K.mul(p2, p2))));
        if (val.is_zero() || !Kv.is_square(val)) return;
        ++out.points;
        Elt d = L.sub(embed_base(R, u), L.mul(embed_base(R, p2), theta));
        BitVec cls = S.classify(d);
        if (out.samples.size() < kSamples) {
            out.samples.push_back(cls);
            out.sample_x.push_back(K.mul(u, K.inv(p2)));
        }
        span.add(cls);
        if (span.rows.size() > out.target_dim)
            throw MathError("Kummer image exceeds its theoretical size at " + Kv.label());
    };
    auto done = [&] { return span.rows.size() == out.target_dim && out.points >= kMinPoints; };

    // Deterministic sweep of small residues, then seeded random sampling.
    ResidueRing sweep(R.K, ideal_pow(K, P.ideal, Kv.even() ? 2 * Kv.e() + 1 : 1));
    size_t nsweep = sweep.size() > Int(4096) ? 4096 : sweep.size().get_ui();
    for (int k = 0; k <= kmax && !done(); ++k)
        for (size_t i = 0; i < nsweep && !done() && out.candidates < opts.budget; ++i)
            try_point(K.from_coeffs(sweep.element(i)), k);
    Rng rng(opts.seed);
    Int range = 1;
    for (int i = 0; i < 4 * Kv.e() + 8; ++i) range *= P.p;
    size_t n = static_cast<size_t>(K.degree());
    while (!done() && out.candidates < opts.budget) {
        std::vector<Int> c(n);
        for (auto& x : c) x = rng.big_below(range);
        int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(kmax + 1)));
        try_point(K.from_coeffs(c), k);
    }
    if (span.rows.size() != out.target_dim)
        throw MathError("Kummer image oracle incomplete at " + Kv.label() + ": reached dimension " +
                        std::to_string(span.rows.size()) + " of " + std::to_string(out.target_dim) + " after " +
                        std::to_string(out.candidates) + " candidates");
    out.basis = span.rows;
    return out;
}

bool f2_subspace(const std::vector<BitVec>& a, const std::vector<BitVec>& b) {
    for (auto& x : a)
        if (!f2_in_span(b, x)) return false;
    return true;
}

bool f2_equal_spans(const std::vector<BitVec>& a, const std::vector<BitVec>& b) {
    return f2_subspace(a, b) && f2_subspace(b, a);
}

}  // namespace selmer
