#include "selmer/relative.hpp"

#include <algorithm>

namespace selmer {

namespace {

using Rel = std::array<Elt, 3>;

std::vector<Rat> rel_to_q(const RelativeField& R, const Rel& a) {
    int n = R.K->degree();
    std::vector<Rat> v(static_cast<size_t>(3 * n), Rat(0));
    for (int j = 0; j < 3; ++j) {
        Poly p = R.K->to_poly(a[j]);
        for (int i = 0; i < n; ++i) v[static_cast<size_t>(i + n * j)] = p.coeff(i);
    }
    return v;
}

Rel q_to_rel(const RelativeField& R, const std::vector<Rat>& v) {
    int n = R.K->degree();
    Rel out;
    for (int j = 0; j < 3; ++j) {
        std::vector<Rat> c(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) c[i] = v[static_cast<size_t>(i + n * j)];
        out[j] = R.K->from_poly(Poly(c));
    }
    return out;
}

std::vector<Rat> vec_mat(const std::vector<Rat>& v, const RatMatrix& m) {
    std::vector<Rat> out(m.empty() ? 0 : m[0].size(), Rat(0));
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (size_t j = 0; j < out.size(); ++j) out[j] += v[i] * m[i][j];
    }
    return out;
}

// Interval of the value of `p` (a polynomial in theta) at the real root `iv` of f.
RatInterval value_at(const Poly& p, const Poly& f, RatInterval iv, const Rat& width) {
    iv = refine_root(f, iv, width);
    return eval_interval(p, iv);
}

}  // namespace

Rel relative_mul(const RelativeField& R, const Rel& a, const Rel& b) {
    const NumberField& K = *R.K;
    std::array<Elt, 5> prod;
    for (auto& e : prod) e = K.zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) prod[i + j] = K.add(prod[i + j], K.mul(a[i], b[j]));
    for (int d = 4; d >= 3; --d) {
        // x^d = -x^{d-3} (F0 + F1 x + F2 x^2)
        if (prod[d].is_zero()) continue;
        for (int t = 0; t < 3; ++t) prod[d - 3 + t] = K.sub(prod[d - 3 + t], K.mul(prod[d], R.F[t]));
        prod[d] = K.zero();
    }
    return {prod[0], prod[1], prod[2]};
}

RelativeField absolutize(const FieldPtr& K, const std::array<Elt, 4>& F) {
    RelativeField R;
    R.K = K;
    R.F = F;
    if (F[3] != K->one()) throw MathError("absolutize: F must be monic of degree 3");
    int n = K->degree();
    int N = 3 * n;
    Elt g = n >= 2 ? K->gen() : K->from_poly(Poly::x());
    bool found = false;
    RatMatrix M, Minv;
    for (int k = 0; k <= 64 && !found; ++k) {
        Rel theta{K->scale(g, Rat(k)), K->one(), K->zero()};
        Rel cur{K->one(), K->zero(), K->zero()};
        M.clear();
        for (int m = 0; m < N; ++m) {
            M.push_back(rel_to_q(R, cur));
            cur = relative_mul(R, cur, theta);
        }
        if (!rat_inverse(M, Minv)) continue;
        auto c = vec_mat(rel_to_q(R, cur), Minv);  // theta^N = sum c_m theta^m
        std::vector<Rat> coeffs(static_cast<size_t>(N + 1));
        for (int m = 0; m < N; ++m) coeffs[m] = -c[m];
        coeffs[N] = 1;
        Poly P(coeffs);
        if (!P.is_integral()) throw MathError("absolutize: F must have integral coefficients over K");
        try {
            R.L = NumberField::build(P);
        } catch (const ReducibleError&) {
            throw MathError("absolutize: F is reducible over K");
        }
        R.shift = k;
        found = true;
    }
    if (!found) throw MathError("absolutize: F is not separable over K");
    R.theta_to_rel = M;
    R.rel_to_theta = Minv;
    R.x_in_L = from_relative(R, {K->zero(), K->one(), K->zero()});
    R.g_in_L = from_relative(R, {g, K->zero(), K->zero()});

    // Real places.
    const NumberField& L = *R.L;
    R.places.assign(static_cast<size_t>(K->r1()), KPlaceInfo{});
    R.l_place_owner.assign(static_cast<size_t>(L.r1()), -1);
    Poly gpoly = L.to_poly(R.g_in_L), xpoly = L.to_poly(R.x_in_L);
    for (int l = 0; l < L.r1(); ++l) {
        Rat width = make_rat(1, Int(1) << 60);
        for (int it = 0; it < 40 && R.l_place_owner[l] < 0; ++it) {
            RatInterval gv = value_at(gpoly, L.poly(), L.real_roots()[l], width);
            int hit = -1, hits = 0;
            for (int v = 0; v < K->r1(); ++v) {
                RatInterval kv = n >= 2 ? K->real_roots()[v] : RatInterval{Rat(0), Rat(0)};
                if (n >= 2) kv = refine_root(K->poly(), kv, width);
                if (!gv.disjoint(kv)) {
                    hit = v;
                    ++hits;
                }
            }
            if (hits == 1) R.l_place_owner[l] = hit;
            width /= Rat(Int(1) << 60);
        }
        if (R.l_place_owner[l] < 0) throw MathError("absolutize: could not match real places");
        R.places[R.l_place_owner[l]].l_places.push_back(l);
    }
    for (auto& pl : R.places) {
        if (pl.l_places.size() == 1) {
            pl.ramified = true;
            ++R.a;
        } else if (pl.l_places.size() == 3) {
            pl.ramified = false;
            ++R.b;
            std::vector<std::pair<RatInterval, int>> xs;
            Rat width = make_rat(1, Int(1) << 60);
            while (true) {
                xs.clear();
                for (int l : pl.l_places) xs.emplace_back(value_at(xpoly, L.poly(), L.real_roots()[l], width), l);
                bool ok = true;
                for (size_t i = 0; i < xs.size(); ++i)
                    for (size_t j = i + 1; j < xs.size(); ++j)
                        if (!xs[i].first.disjoint(xs[j].first)) ok = false;
                if (ok) break;
                width /= Rat(Int(1) << 60);
            }
            std::sort(xs.begin(), xs.end(), [](auto& u, auto& v) { return u.first.hi < v.first.lo; });
            pl.l_places.clear();
            for (auto& [iv, l] : xs) pl.l_places.push_back(l);
        } else {
            throw MathError("absolutize: inconsistent real place count");
        }
    }
    R.c = K->r2();
    return R;
}

Elt embed_base(const RelativeField& R, const Elt& a) { return from_relative(R, {a, R.K->zero(), R.K->zero()}); }

std::array<Elt, 3> to_relative(const RelativeField& R, const Elt& a) {
    Poly p = R.L->to_poly(a);
    int N = R.L->degree();
    std::vector<Rat> v(static_cast<size_t>(N));
    for (int m = 0; m < N; ++m) v[m] = p.coeff(m);
    return q_to_rel(R, vec_mat(v, R.theta_to_rel));
}

Elt from_relative(const RelativeField& R, const std::array<Elt, 3>& c) {
    auto v = vec_mat(rel_to_q(R, c), R.rel_to_theta);
    return R.L->from_poly(Poly(v));
}

Elt relative_norm(const RelativeField& R, const Elt& a) {
    const NumberField& K = *R.K;
    Rel ar = to_relative(R, a);
    std::array<Rel, 3> rows;
    Rel xp{K.one(), K.zero(), K.zero()};
    Rel x{K.zero(), K.one(), K.zero()};
    for (int j = 0; j < 3; ++j) {
        rows[j] = relative_mul(R, ar, xp);
        xp = relative_mul(R, xp, x);
    }
    auto m = [&](int i, int j) -> const Elt& { return rows[i][j]; };
    auto minor = [&](int i1, int j1, int i2, int j2) {
        return K.sub(K.mul(m(i1, j1), m(i2, j2)), K.mul(m(i1, j2), m(i2, j1)));
    };
    Elt d = K.mul(m(0, 0), minor(1, 1, 2, 2));
    d = K.sub(d, K.mul(m(0, 1), minor(1, 0, 2, 2)));
    d = K.add(d, K.mul(m(0, 2), minor(1, 0, 2, 1)));
    return d;
}

}  // namespace selmer
