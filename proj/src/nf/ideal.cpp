#include "selmer/ideal.hpp"

#include <algorithm>
#include <sstream>

namespace selmer {

namespace {

Int content_gcd(const IntMatrix& H, Int g) {
    for (size_t i = 0; i < H.rows(); ++i)
        for (size_t j = 0; j < H.cols(); ++j) {
            if (g == 1) return g;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), H(i, j).get_mpz_t());
        }
    return g;
}

FractionalIdeal normalized(IntMatrix H, Int den) {
    Int g = content_gcd(H, den);
    if (g != 1) {
        for (size_t i = 0; i < H.rows(); ++i)
            for (size_t j = 0; j < H.cols(); ++j) H(i, j) /= g;
        den /= g;
    }
    return FractionalIdeal{std::move(H), std::move(den)};
}

Int hnf_det(const IntMatrix& H) {
    Int d = 1;
    for (size_t i = 0; i < H.rows(); ++i) d *= H(i, i);
    return abs(d);
}

// Canonical HNF of the lattice spanned by `rows`, known to contain D * Z^n.
IntMatrix lattice_hnf(const IntMatrix& rows, const Int& D) {
    IntMatrix h = hnf_mod(rows, D);
    // hnf_mod leaves entries reduced mod D; canonicalise above pivots.
    return hnf_basis(h);
}

std::vector<std::uint64_t> mulmod_vec(const NumberField& K, const std::vector<std::uint64_t>& a,
                                      const std::vector<std::uint64_t>& b, std::uint64_t p) {
    int n = K.degree();
    std::vector<std::uint64_t> r(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < n; ++j) {
            if (!b[j]) continue;
            std::uint64_t f = mulmod(a[i], b[j], p);
            const auto& t = K.table(i, j);
            for (int k = 0; k < n; ++k)
                if (t[k] != 0) r[k] = (r[k] + mulmod(f, mod_of(t[k], p), p)) % p;
        }
    }
    return r;
}

// Row-echelon basis over F_p of the span of `rows` (in place, zero rows removed).
std::vector<std::vector<std::uint64_t>> fp_echelon(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p) {
    if (rows.empty()) return rows;
    size_t w = rows[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < w && rank < rows.size(); ++col) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] % p == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        std::uint64_t inv = invmod(rows[rank][col] % p, p);
        for (auto& x : rows[rank]) x = mulmod(x % p, inv, p);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rank) continue;
            std::uint64_t f = rows[i][col] % p;
            if (!f) continue;
            for (size_t k = 0; k < w; ++k) rows[i][k] = (rows[i][k] % p + p - mulmod(f, rows[rank][k], p)) % p;
        }
        ++rank;
    }
    rows.resize(rank);
    return rows;
}

// Reduce v against an echelon basis (pivot = first nonzero entry, normalised to 1).
std::vector<std::uint64_t> fp_reduce(std::vector<std::uint64_t> v, const std::vector<std::vector<std::uint64_t>>& ech,
                                     std::uint64_t p) {
    for (const auto& r : ech) {
        size_t piv = 0;
        while (r[piv] == 0) ++piv;
        std::uint64_t f = v[piv] % p;
        if (!f) continue;
        for (size_t k = 0; k < v.size(); ++k) v[k] = (v[k] % p + p - mulmod(f, r[k], p)) % p;
    }
    return v;
}

FractionalIdeal ideal_from_fp_span(const NumberField& K, const std::vector<std::vector<std::uint64_t>>& span,
                                   std::uint64_t p) {
    int n = K.degree();
    IntMatrix m(span.size() + static_cast<size_t>(n), static_cast<size_t>(n));
    for (size_t i = 0; i < span.size(); ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Int(static_cast<unsigned long>(span[i][j]));
    Int P(static_cast<unsigned long>(p));
    for (int j = 0; j < n; ++j) m(span.size() + j, j) = P;
    return FractionalIdeal{lattice_hnf(m, P), 1};
}

std::vector<Int> anti_uniformizer(const NumberField& K, const FractionalIdeal& P, std::uint64_t p) {
    int n = K.degree();
    std::vector<std::vector<std::uint64_t>> rows;
    for (int i = 0; i < n; ++i) {
        std::vector<std::uint64_t> row;
        for (size_t k = 0; k < P.H.rows(); ++k) {
            auto z = K.mul_int(K.basis(i).c, P.H.row(k));
            for (auto& x : z) row.push_back(mod_of(x, p));
        }
        rows.push_back(row);
    }
    auto ker = fp_left_kernel(rows, p);
    if (ker.empty()) throw MathError("anti_uniformizer: no element found");
    std::vector<Int> tau;
    for (auto x : ker[0]) tau.push_back(Int(static_cast<unsigned long>(x)));
    return tau;
}

std::vector<std::uint64_t> residue_functional(const FractionalIdeal& P, std::uint64_t p) {
    // r with H r = 0 mod p and r_0 = 1.
    size_t n = P.H.cols();
    std::vector<std::vector<std::uint64_t>> rows(n, std::vector<std::uint64_t>(P.H.rows()));
    for (size_t i = 0; i < P.H.rows(); ++i)
        for (size_t j = 0; j < n; ++j) rows[j][i] = mod_of(P.H(i, j), p);
    auto ker = fp_left_kernel(rows, p);
    if (ker.size() != 1 || ker[0][0] == 0) throw MathError("residue_functional: prime is not of degree one");
    std::uint64_t inv = invmod(ker[0][0], p);
    for (auto& x : ker[0]) x = mulmod(x, inv, p);
    return ker[0];
}

int norm_exponent(Int N, const Int& p) {
    int f = 0;
    while (N % p == 0 && N > 1) {
        N /= p;
        ++f;
    }
    if (N != 1) throw MathError("prime ideal norm is not a power of p");
    return f;
}

void finish_prime(const NumberField& K, PrimeIdeal& P, std::uint64_t p) {
    P.tau = anti_uniformizer(K, P.ideal, p);
    P.f = norm_exponent(hnf_det(P.ideal.H), P.p);
    P.e = valuation_int(K, P, K.from_int(P.p).c);
    if (P.f == 1) P.residue = residue_functional(P.ideal, p);
    std::ostringstream os;
    os << "(" << P.p.get_str() << ", e=" << P.e << ", f=" << P.f << ")";
    P.label = os.str();
}

std::vector<Int> poly_at_theta_integral(const NumberField& K, const Poly& q) {
    Elt e = K.from_poly(q);
    return e.c;  // denominator divides the index; coprime to p at Kummer-Dedekind primes
}

std::vector<std::vector<std::vector<std::uint64_t>>> split_algebra(const NumberField& K,
                                                                   std::vector<std::vector<std::uint64_t>> J,
                                                                   std::uint64_t p, Rng& rng, int depth) {
    int n = K.degree();
    int d = n - static_cast<int>(J.size());
    if (d == 1) return {J};
    for (int attempt = 0; attempt < 60; ++attempt) {
        std::vector<std::uint64_t> a(static_cast<size_t>(n));
        for (auto& x : a) x = rng.below(p);
        // Minimal polynomial of a in O/J via powers reduced modulo J.
        std::vector<std::vector<std::uint64_t>> powers;
        std::vector<std::uint64_t> cur(static_cast<size_t>(n), 0);
        cur[0] = 1;
        // echelon of [reduced power | combination]
        std::vector<std::vector<std::uint64_t>> ech;
        std::vector<std::uint64_t> minpoly;
        for (int k = 0; k <= d; ++k) {
            powers.push_back(cur);
            auto red = fp_reduce(cur, J, p);
            std::vector<std::uint64_t> aug(red);
            aug.resize(static_cast<size_t>(n + d + 1), 0);
            aug[static_cast<size_t>(n + k)] = 1;
            // reduce against previous augmented rows
            for (const auto& r : ech) {
                size_t piv = 0;
                while (piv < static_cast<size_t>(n) && r[piv] == 0) ++piv;
                std::uint64_t f = aug[piv] % p;
                if (!f) continue;
                for (size_t t = 0; t < aug.size(); ++t) aug[t] = (aug[t] + p - mulmod(f, r[t], p)) % p;
            }
            bool zero = true;
            for (int t = 0; t < n; ++t)
                if (aug[t]) zero = false;
            if (zero) {
                minpoly.assign(aug.begin() + n, aug.begin() + n + k + 1);
                break;
            }
            size_t piv = 0;
            while (aug[piv] == 0) ++piv;
            std::uint64_t inv = invmod(aug[piv], p);
            for (auto& x : aug) x = mulmod(x, inv, p);
            ech.push_back(aug);
            cur = mulmod_vec(K, cur, a, p);
        }
        modp::trim(minpoly);
        minpoly = modp::make_monic(minpoly, p);
        auto facs = modp::factor(minpoly, p, rng);
        if (facs.size() == 1 && static_cast<int>(facs[0].poly.size()) - 1 == d) return {J};
        if (facs.size() < 2) continue;
        std::vector<std::vector<std::vector<std::uint64_t>>> out;
        for (auto& fc : facs) {
            // phi(a) from powers
            std::vector<std::uint64_t> val(static_cast<size_t>(n), 0);
            for (size_t k = 0; k < fc.poly.size(); ++k) {
                if (!fc.poly[k]) continue;
                for (int t = 0; t < n; ++t) val[t] = (val[t] + mulmod(fc.poly[k], powers[k][t], p)) % p;
            }
            auto rows = J;
            for (int i = 0; i < n; ++i) {
                std::vector<std::uint64_t> e(static_cast<size_t>(n), 0);
                e[i] = 1;
                rows.push_back(mulmod_vec(K, e, val, p));
            }
            auto sub = split_algebra(K, fp_echelon(rows, p), p, rng, depth + 1);
            out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
    }
    throw MathError("decompose_prime: failed to split residue algebra");
}

}  // namespace

std::string FractionalIdeal::to_string() const {
    std::ostringstream os;
    os << H.to_string();
    if (den != 1) os << "/" << den.get_str();
    return os.str();
}

FractionalIdeal ideal_unit(const NumberField& K) {
    return FractionalIdeal{IntMatrix::identity(static_cast<size_t>(K.degree())), 1};
}

FractionalIdeal ideal_from_hnf(const NumberField& K, IntMatrix rows, Int den) {
    (void)K;
    return normalized(hnf_basis(rows), std::move(den));
}

FractionalIdeal ideal_generated(const NumberField& K, const std::vector<Elt>& gens) {
    int n = K.degree();
    Int L = 1;
    for (auto& g : gens) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), g.den.get_mpz_t());
    IntMatrix rows(0, static_cast<size_t>(n));
    Int D = 0;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        std::vector<Int> c = g.c;
        Int s = L / g.den;
        for (auto& x : c) x *= s;
        IntMatrix m = K.mult_matrix(c);
        for (size_t i = 0; i < m.rows(); ++i) rows.append_row(m.row(i));
        Int nn = abs(determinant(m));
        if (D == 0) D = nn;
        else mpz_gcd(D.get_mpz_t(), D.get_mpz_t(), nn.get_mpz_t());
    }
    if (D == 0) throw MathError("ideal_generated: zero ideal");
    return normalized(lattice_hnf(rows, D), L);
}

FractionalIdeal principal_ideal(const NumberField& K, const Elt& a) { return ideal_generated(K, {a}); }

FractionalIdeal ideal_mul(const NumberField& K, const FractionalIdeal& a, const FractionalIdeal& b) {
    int n = K.degree();
    IntMatrix rows(0, static_cast<size_t>(n));
    for (size_t i = 0; i < a.H.rows(); ++i)
        for (size_t j = 0; j < b.H.rows(); ++j) rows.append_row(K.mul_int(a.H.row(i), b.H.row(j)));
    Int D = hnf_det(a.H) * hnf_det(b.H);
    return normalized(lattice_hnf(rows, D), a.den * b.den);
}

FractionalIdeal ideal_add(const NumberField& K, const FractionalIdeal& a, const FractionalIdeal& b) {
    int n = K.degree();
    IntMatrix rows(0, static_cast<size_t>(n));
    for (size_t i = 0; i < a.H.rows(); ++i) {
        auto r = a.H.row(i);
        for (auto& x : r) x *= b.den;
        rows.append_row(r);
    }
    for (size_t i = 0; i < b.H.rows(); ++i) {
        auto r = b.H.row(i);
        for (auto& x : r) x *= a.den;
        rows.append_row(r);
    }
    Int dn;
    mpz_pow_ui(dn.get_mpz_t(), b.den.get_mpz_t(), static_cast<unsigned long>(n));
    Int D = hnf_det(a.H) * dn;
    return normalized(lattice_hnf(rows, D), a.den * b.den);
}

FractionalIdeal ideal_inv(const NumberField& K, const FractionalIdeal& a) {
    // x in A^{-1} iff x * (basis of A) lies in O: dual of the column lattice.
    int n = K.degree();
    IntMatrix cols(0, static_cast<size_t>(n));
    for (size_t k = 0; k < a.H.rows(); ++k) {
        IntMatrix m = K.mult_matrix(a.H.row(k));
        IntMatrix t = m.transpose();
        for (size_t i = 0; i < t.rows(); ++i) cols.append_row(t.row(i));
    }
    IntMatrix C = lattice_hnf(cols, hnf_det(a.H));
    RatMatrix cm(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n))), ci;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cm[i][j] = C(i, j);
    if (!rat_inverse(cm, ci)) throw MathError("ideal_inv: singular");
    // rows of (C^{-1})^T
    Int L = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), ci[j][i].get_den_mpz_t());
    IntMatrix rows(static_cast<size_t>(n), static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rows(i, j) = Rat(ci[j][i] * L).get_num() * a.den;
    return normalized(hnf_basis(rows), L);
}

FractionalIdeal ideal_pow(const NumberField& K, const FractionalIdeal& a, long e) {
    if (e < 0) return ideal_pow(K, ideal_inv(K, a), -e);
    FractionalIdeal r = ideal_unit(K), b = a;
    while (e) {
        if (e & 1) r = ideal_mul(K, r, b);
        e >>= 1;
        if (e) b = ideal_mul(K, b, b);
    }
    return r;
}

FractionalIdeal ideal_div(const NumberField& K, const FractionalIdeal& a, const FractionalIdeal& b) {
    return ideal_mul(K, a, ideal_inv(K, b));
}

Rat ideal_norm(const FractionalIdeal& a) {
    Int dn;
    mpz_pow_ui(dn.get_mpz_t(), a.den.get_mpz_t(), static_cast<unsigned long>(a.H.cols()));
    return make_rat(hnf_det(a.H), dn);
}

Int ideal_min(const FractionalIdeal& a) {
    if (!a.is_integral()) throw MathError("ideal_min: ideal not integral");
    size_t n = a.H.cols();
    RatMatrix m(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i][j] = a.H(i, j);
    std::vector<Rat> e0(n, Rat(0));
    e0[0] = 1;
    auto x = rat_solve_left(m, e0);
    Int L = 1;
    for (auto& v : x) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), v.get_den_mpz_t());
    return L;
}

bool ideal_contains(const NumberField& K, const FractionalIdeal& a, const Elt& x) {
    (void)K;
    if (x.is_zero()) return true;
    size_t n = a.H.cols();
    RatMatrix m(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i][j] = a.H(i, j);
    std::vector<Rat> v(n);
    for (size_t j = 0; j < n; ++j) v[j] = make_rat(x.c[j] * a.den, x.den);
    auto y = rat_solve_left(m, v);
    for (auto& t : y)
        if (t.get_den() != 1) return false;
    return true;
}

std::vector<Elt> ideal_basis(const NumberField& K, const FractionalIdeal& a) {
    std::vector<Elt> out;
    for (size_t i = 0; i < a.H.rows(); ++i) {
        Elt e = K.from_coeffs(a.H.row(i));
        e.den = a.den;
        e.normalize();
        out.push_back(e);
    }
    return out;
}

int valuation_int(const NumberField& K, const PrimeIdeal& P, std::vector<Int> a) {
    bool zero = true;
    for (auto& x : a)
        if (x != 0) zero = false;
    if (zero) throw MathError("valuation of zero");
    int v = 0;
    while (true) {
        auto b = K.mul_int(a, P.tau);
        for (auto& x : b)
            if (!mpz_divisible_p(x.get_mpz_t(), P.p.get_mpz_t())) return v;
        for (auto& x : b) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), P.p.get_mpz_t());
        a = std::move(b);
        ++v;
    }
}

int valuation(const NumberField& K, const PrimeIdeal& P, const Elt& a) {
    if (a.is_zero()) throw MathError("valuation of zero");
    return valuation_int(K, P, a.c) - P.e * valuation(a.den, P.p);
}

int ideal_valuation(const NumberField& K, const PrimeIdeal& P, const FractionalIdeal& a) {
    int best = -1;
    for (size_t i = 0; i < a.H.rows(); ++i) {
        auto r = a.H.row(i);
        bool zero = true;
        for (auto& x : r)
            if (x != 0) zero = false;
        if (zero) continue;
        int v = valuation_int(K, P, r);
        if (best < 0 || v < best) best = v;
        if (best == 0) break;
    }
    return best - P.e * valuation(a.den, P.p);
}

std::vector<std::pair<PrimeIdeal, int>> factor_ideal(const NumberField& K, const FractionalIdeal& a) {
    std::vector<Int> ps;
    for (auto& [p, e] : factor_integer(hnf_det(a.H))) ps.push_back(p);
    for (auto& [p, e] : factor_integer(a.den)) ps.push_back(p);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    std::vector<std::pair<PrimeIdeal, int>> out;
    for (auto& p : ps)
        for (auto& P : decompose_prime(K, p)) {
            int v = ideal_valuation(K, P, a);
            if (v != 0) out.emplace_back(P, v);
        }
    return out;
}

std::uint64_t reduce_mod_prime(const PrimeIdeal& P, const std::vector<Int>& a) {
    if (P.f != 1) throw MathError("reduce_mod_prime: residue degree must be one");
    std::uint64_t p = P.p.get_ui();
    std::uint64_t acc = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) acc = (acc + mulmod(mod_of(a[i], p), P.residue[i], p)) % p;
    return acc;
}

std::vector<PrimeIdeal> decompose_prime(const NumberField& K, const Int& pbig) {
    if (!is_prime(pbig)) throw MathError("decompose_prime: argument is not prime");
    if (!pbig.fits_ulong_p() || pbig > Int(1) << 62) throw MathError("decompose_prime: prime too large");
    std::uint64_t p = pbig.get_ui();
    int n = K.degree();
    Rng rng(p * 0x9e3779b97f4a7c15ULL + 1);
    std::vector<PrimeIdeal> out;
    if (n == 1) {
        PrimeIdeal P;
        P.p = pbig;
        P.ideal = FractionalIdeal{IntMatrix::from_rows(std::vector<std::vector<Int>>{{pbig}}, 1), 1};
        P.gen = K.from_int(pbig);
        P.two_element = true;
        finish_prime(K, P, p);
        return {P};
    }
    if (K.index() % pbig != 0) {
        auto facs = factor_mod_p(K.poly(), p, rng);
        auto gbar = modp::reduce(K.poly(), p);
        for (auto& fc : facs) {
            PrimeIdeal P;
            P.p = pbig;
            auto phi = poly_at_theta_integral(K, modp::lift(fc.poly));
            if (K.from_coeffs(phi).is_zero()) phi = K.from_int(pbig).c;  // inert: P = pO
            IntMatrix rows = K.mult_matrix(phi);
            for (int j = 0; j < n; ++j) {
                std::vector<Int> r(static_cast<size_t>(n), Int(0));
                r[j] = pbig;
                rows.append_row(r);
            }
            P.ideal = FractionalIdeal{lattice_hnf(rows, pbig), 1};
            modp::Vec cof, rem;
            modp::divmod(gbar, fc.poly, p, cof, rem);
            P.tau = poly_at_theta_integral(K, modp::lift(cof));
            for (auto& x : P.tau) x = mod_floor(x, pbig);
            P.f = static_cast<int>(fc.poly.size()) - 1;
            P.e = fc.multiplicity;
            P.gen = K.from_coeffs(phi);
            if (P.e == 1 && valuation_int(K, P, phi) > 1) P.gen = K.add(P.gen, K.from_int(pbig));
            P.two_element = true;
            if (P.f == 1) P.residue = residue_functional(P.ideal, p);
            std::ostringstream os;
            os << "(" << pbig.get_str() << ", e=" << P.e << ", f=" << P.f << ")";
            P.label = os.str();
            out.push_back(std::move(P));
        }
    } else {
        // p-radical = kernel of x -> x^q on O/pO.
        std::uint64_t q = p;
        while (q < static_cast<std::uint64_t>(n)) q *= p;
        std::vector<std::vector<std::uint64_t>> frob;
        for (int i = 0; i < n; ++i) {
            std::vector<std::uint64_t> base(static_cast<size_t>(n), 0), acc(static_cast<size_t>(n), 0);
            base[i] = 1;
            acc[0] = 1;
            std::uint64_t e = q;
            while (e) {
                if (e & 1) acc = mulmod_vec(K, acc, base, p);
                e >>= 1;
                if (e) base = mulmod_vec(K, base, base, p);
            }
            frob.push_back(acc);
        }
        auto rad = fp_echelon(fp_left_kernel(frob, p), p);
        auto comps = split_algebra(K, rad, p, rng, 0);
        for (auto& J : comps) {
            PrimeIdeal P;
            P.p = pbig;
            P.ideal = ideal_from_fp_span(K, J, p);
            finish_prime(K, P, p);
            out.push_back(std::move(P));
        }
        // Two-element representations by random search.
        for (auto& P : out) {
            for (int attempt = 0; attempt < 400 && !P.two_element; ++attempt) {
                std::vector<Int> x(static_cast<size_t>(n), Int(0));
                for (size_t k = 0; k < P.ideal.H.rows(); ++k) {
                    Int c(static_cast<unsigned long>(rng.below(p + 1)));
                    for (int t = 0; t < n; ++t) x[t] += c * P.ideal.H(k, t);
                }
                bool zero = true;
                for (auto& t : x)
                    if (t != 0) zero = false;
                if (zero) continue;
                bool ok = valuation_int(K, P, x) == 1;
                if (!ok) continue;
                for (auto& Q : out)
                    if (&Q != &P && valuation_int(K, Q, x) != 0) ok = false;
                if (ok) {
                    P.gen = K.from_coeffs(x);
                    P.two_element = true;
                }
            }
        }
    }
    int sum = 0;
    for (auto& P : out) {
        sum += P.e * P.f;
        Int N = hnf_det(P.ideal.H), pf;
        mpz_pow_ui(pf.get_mpz_t(), pbig.get_mpz_t(), static_cast<unsigned long>(P.f));
        if (N != pf) throw MathError("decompose_prime: norm check failed");
    }
    if (sum != n) throw MathError("decompose_prime: sum e*f != degree");
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        if (a.f != b.f) return a.f < b.f;
        if (a.e != b.e) return a.e > b.e;
        return a.ideal.H.to_string() < b.ideal.H.to_string();
    });
    return out;
}

}  // namespace selmer
