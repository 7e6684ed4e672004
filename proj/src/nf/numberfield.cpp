#include "selmer/numberfield.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace selmer {

bool Elt::is_zero() const {
    for (auto& x : c)
        if (x != 0) return false;
    return true;
}

void Elt::normalize() {
    if (den < 0) {
        den = -den;
        for (auto& x : c) x = -x;
    }
    Int g = den;
    for (auto& x : c) {
        if (g == 1) break;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
    if (g != 1) {
        den /= g;
        for (auto& x : c) x /= g;
    }
}

std::vector<std::vector<std::uint64_t>> fp_left_kernel(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p) {
    std::size_t m = rows.size();
    if (m == 0) return {};
    std::size_t w = rows[0].size();
    for (std::size_t i = 0; i < m; ++i) {
        rows[i].resize(w + m, 0);
        rows[i][w + i] = 1;
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < w && rank < m; ++col) {
        std::size_t piv = rank;
        while (piv < m && rows[piv][col] % p == 0) ++piv;
        if (piv == m) continue;
        std::swap(rows[piv], rows[rank]);
        std::uint64_t inv = invmod(rows[rank][col] % p, p);
        for (auto& x : rows[rank]) x = mulmod(x % p, inv, p);
        for (std::size_t i = rank + 1; i < m; ++i) {
            std::uint64_t f = rows[i][col] % p;
            if (!f) continue;
            for (std::size_t k = col; k < w + m; ++k)
                rows[i][k] = (rows[i][k] % p + p - mulmod(f, rows[rank][k], p)) % p;
        }
        ++rank;
    }
    std::vector<std::vector<std::uint64_t>> out;
    for (std::size_t i = rank; i < m; ++i) out.emplace_back(rows[i].begin() + static_cast<long>(w), rows[i].end());
    return out;
}

namespace {

struct Order {
    IntMatrix B;  // rows: basis elements in power coordinates (times d)
    Int d = 1;
    std::vector<std::vector<Int>> table;
    RatMatrix binv;  // power coordinates -> order coordinates (including the 1/d scaling)
};

std::vector<Rat> poly_vec(const Poly& p, int n) {
    std::vector<Rat> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = p.coeff(i);
    return v;
}

Poly row_poly(const IntMatrix& B, size_t i, const Int& d) {
    std::vector<Rat> c;
    for (size_t j = 0; j < B.cols(); ++j) c.emplace_back(make_rat(B(i, j), d));
    return Poly(c);
}

void prepare_order(Order& o, const Poly& g) {
    int n = g.degree();
    RatMatrix m(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = make_rat(o.B(i, j), o.d);
    if (!rat_inverse(m, o.binv)) throw MathError("order basis is singular");
    std::vector<Poly> polys;
    for (int i = 0; i < n; ++i) polys.push_back(row_poly(o.B, static_cast<size_t>(i), o.d));
    o.table.assign(static_cast<size_t>(n * n), {});
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Poly prod = (polys[i] * polys[j]) % g;
            auto pv = poly_vec(prod, n);
            std::vector<Int> coords(static_cast<size_t>(n));
            for (int k = 0; k < n; ++k) {
                Rat acc = 0;
                for (int l = 0; l < n; ++l) acc += pv[l] * o.binv[l][k];
                if (acc.get_den() != 1) throw MathError("order is not closed under multiplication");
                coords[k] = acc.get_num();
            }
            o.table[i * n + j] = coords;
            o.table[j * n + i] = coords;
        }
}

std::vector<std::uint64_t> mul_mod_table(const Order& o, const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                         std::uint64_t p, int n) {
    std::vector<std::uint64_t> r(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < n; ++j) {
            if (!b[j]) continue;
            std::uint64_t f = mulmod(a[i], b[j], p);
            const auto& t = o.table[i * n + j];
            for (int k = 0; k < n; ++k) {
                if (t[k] == 0) continue;
                r[k] = (r[k] + mulmod(f, mod_of(t[k], p), p)) % p;
            }
        }
    }
    return r;
}

bool dedekind_maximal(const Poly& g, std::uint64_t p) {
    Rng rng(p);
    auto facs = factor_mod_p(g, p, rng);
    Poly prod = Poly::constant(1);
    for (auto& f : facs)
        for (int e = 0; e < f.multiplicity; ++e) prod = prod * modp::lift(f.poly);
    Poly diff = (g - prod) * make_rat(1, Int(static_cast<unsigned long>(p)));
    if (!diff.is_integral()) throw MathError("dedekind: inconsistent factorization");
    auto F = modp::reduce(diff, p);
    for (auto& f : facs) {
        if (f.multiplicity < 2) continue;
        if (F.empty() || modp::rem(F, f.poly, p).empty()) return false;
    }
    return true;
}

IntMatrix lattice_from_kernel(const std::vector<std::vector<std::uint64_t>>& ker, std::uint64_t p, int n) {
    IntMatrix m(ker.size() + static_cast<size_t>(n), static_cast<size_t>(n));
    for (size_t i = 0; i < ker.size(); ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Int(static_cast<unsigned long>(ker[i][j]));
    for (int j = 0; j < n; ++j) m(ker.size() + j, j) = Int(static_cast<unsigned long>(p));
    return hnf_mod(m, Int(static_cast<unsigned long>(p)));
}

// One round of the ring-of-multipliers enlargement; returns false when the
// order is already p-maximal.
bool enlarge_at(Order& o, const Poly& g, std::uint64_t p) {
    int n = g.degree();
    std::uint64_t q = p;
    while (q < static_cast<std::uint64_t>(n)) q *= p;
    // Frobenius power x -> x^q is F_p-linear on O/pO; its kernel is the p-radical.
    std::vector<std::vector<std::uint64_t>> frob;
    for (int i = 0; i < n; ++i) {
        std::vector<std::uint64_t> base(static_cast<size_t>(n), 0), acc(static_cast<size_t>(n), 0);
        base[i] = 1;
        acc[0] = 1;  // omega_0 = 1 for every order we build (constant row first)
        // Order basis need not start with 1; express 1 in order coordinates.
        {
            std::vector<Rat> one(static_cast<size_t>(n), Rat(0));
            one[0] = 1;
            for (int k = 0; k < n; ++k) {
                Rat v = 0;
                for (int l = 0; l < n; ++l) v += one[l] * o.binv[l][k];
                acc[k] = mod_of(v.get_num(), p);
            }
        }
        std::uint64_t e = q;
        while (e) {
            if (e & 1) acc = mul_mod_table(o, acc, base, p, n);
            e >>= 1;
            if (e) base = mul_mod_table(o, base, base, p, n);
        }
        frob.push_back(acc);
    }
    auto rad = fp_left_kernel(frob, p);
    IntMatrix Ip = lattice_from_kernel(rad, p, n);
    RatMatrix ipm(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n))), ipinv;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ipm[i][j] = Ip(i, j);
    rat_inverse(ipm, ipinv);
    std::vector<std::vector<std::uint64_t>> rows;
    for (int i = 0; i < n; ++i) {
        std::vector<std::uint64_t> row;
        for (int k = 0; k < n; ++k) {
            // omega_i * b_k in order coordinates.
            std::vector<Int> z(static_cast<size_t>(n), Int(0));
            for (int j = 0; j < n; ++j) {
                if (Ip(k, j) == 0) continue;
                const auto& t = o.table[i * n + j];
                for (int l = 0; l < n; ++l) z[l] += Ip(k, j) * t[l];
            }
            for (int c = 0; c < n; ++c) {
                Rat v = 0;
                for (int l = 0; l < n; ++l) v += Rat(z[l]) * ipinv[l][c];
                if (v.get_den() != 1) throw MathError("p-radical is not an ideal");
                row.push_back(mod_of(v.get_num(), p));
            }
        }
        rows.push_back(row);
    }
    auto ker = fp_left_kernel(rows, p);
    if (ker.empty()) return false;
    IntMatrix U = lattice_from_kernel(ker, p, n);
    IntMatrix newB = U * o.B;
    Int newd = o.d * Int(static_cast<unsigned long>(p));
    Int gg = newd;
    for (size_t i = 0; i < newB.rows(); ++i)
        for (size_t j = 0; j < newB.cols(); ++j) mpz_gcd(gg.get_mpz_t(), gg.get_mpz_t(), newB(i, j).get_mpz_t());
    for (size_t i = 0; i < newB.rows(); ++i)
        for (size_t j = 0; j < newB.cols(); ++j) newB(i, j) /= gg;
    newd /= gg;
    o.B = hnf_basis(newB);
    o.d = newd;
    prepare_order(o, g);
    return true;
}

// Durand-Kerner iteration followed by Newton polishing.
std::vector<std::complex<long double>> complex_roots_all(const Poly& g) {
    int n = g.degree();
    std::vector<std::complex<long double>> c(static_cast<size_t>(n + 1));
    for (int i = 0; i <= n; ++i) c[i] = static_cast<long double>(g.coeff(i).get_d());
    auto eval = [&](std::complex<long double> z) {
        std::complex<long double> acc = 0;
        for (int i = n; i >= 0; --i) acc = acc * z + c[i];
        return acc;
    };
    auto deriv = [&](std::complex<long double> z) {
        std::complex<long double> acc = 0;
        for (int i = n; i >= 1; --i) acc = acc * z + c[i] * static_cast<long double>(i);
        return acc;
    };
    long double radius = 1;
    for (int i = 0; i < n; ++i) radius = std::max(radius, 1 + std::abs(c[i]));
    std::vector<std::complex<long double>> z(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) z[i] = std::polar(radius * 0.5L, 0.4L + 2.0L * 3.14159265358979323846L * i / n);
    for (int it = 0; it < 2000; ++it) {
        long double change = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<long double> den = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= (z[i] - z[j]);
            if (std::abs(den) == 0) den = 1e-30L;
            auto step = eval(z[i]) / den;
            z[i] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-30L) break;
    }
    for (auto& r : z)
        for (int it = 0; it < 5; ++it) {
            auto d = deriv(r);
            if (std::abs(d) == 0) break;
            r -= eval(r) / d;
        }
    return z;
}

}  // namespace

FieldPtr NumberField::build(const Poly& g) {
    if (g.degree() < 1 || !g.is_monic() || !g.is_integral())
        throw MathError("build_field: defining polynomial must be monic and integral of degree >= 1");
    Rng rng(0x5eed);
    if (g.degree() >= 2) {
        Poly w;
        if (find_rational_factor(g, rng, w))
            throw ReducibleError("build_field: polynomial is reducible, factor " + w.to_string(), w);
    }
    auto nf = std::shared_ptr<NumberField>(new NumberField());
    nf->poly_ = g;
    nf->n_ = g.degree();
    int n = nf->n_;
    nf->poly_disc_ = n == 1 ? Int(1) : discriminant(g).get_num();
    Order o;
    o.B = IntMatrix::identity(static_cast<size_t>(n));
    o.d = 1;
    prepare_order(o, g);
    if (n > 1) {
        for (auto& [p, e] : factor_integer(nf->poly_disc_)) {
            if (e < 2) continue;
            if (!p.fits_ulong_p()) throw MathError("build_field: discriminant prime too large");
            std::uint64_t pp = p.get_ui();
            if (dedekind_maximal(g, pp)) continue;
            while (enlarge_at(o, g, pp)) {
            }
        }
    }
    // Canonical triangular basis omega_i = (theta^i + lower terms) / d_i.
    IntMatrix rev(static_cast<size_t>(n), static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rev(i, j) = o.B(i, n - 1 - j);
    IntMatrix h = hnf_basis(rev);
    IntMatrix B(static_cast<size_t>(n), static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B(i, j) = h(n - 1 - i, n - 1 - j);
    nf->basis_num_ = B;
    nf->basis_den_ = o.d;
    nf->finish_basis();
    nf->compute_embeddings();
    return nf;
}

void NumberField::finish_basis() {
    Order o;
    o.B = basis_num_;
    o.d = basis_den_;
    prepare_order(o, poly_);
    table_ = o.table;
    power_to_basis_ = o.binv;
    basis_polys_.clear();
    for (int i = 0; i < n_; ++i) basis_polys_.push_back(row_poly(basis_num_, static_cast<size_t>(i), basis_den_));
    // index = d^n / det(B)
    Int det = determinant(basis_num_);
    Int dn;
    mpz_pow_ui(dn.get_mpz_t(), basis_den_.get_mpz_t(), static_cast<unsigned long>(n_));
    index_ = dn / abs(det);
    disc_ = poly_disc_ / (index_ * index_);
    if (n_ == 1) disc_ = 1;
}

void NumberField::compute_embeddings() {
    auto asc = isolate_real_roots(poly_);
    r1_ = static_cast<int>(asc.size());
    r2_ = (n_ - r1_) / 2;
    real_roots_.clear();
    Rat eps = make_rat(1, Int(1) << 80);
    for (auto it = asc.rbegin(); it != asc.rend(); ++it) real_roots_.push_back(refine_root(poly_, *it, eps));
    complex_roots_.clear();
    if (r2_ > 0) {
        auto all = complex_roots_all(poly_);
        std::sort(all.begin(), all.end(), [](auto& a, auto& b) { return std::abs(a.imag()) > std::abs(b.imag()); });
        std::vector<std::complex<long double>> picked;
        for (auto& z : all)
            if (z.imag() > 0 && static_cast<int>(picked.size()) < r2_) picked.push_back(z);
        // Pair up any roots whose conjugate was chosen with the wrong sign.
        for (auto& z : all)
            if (static_cast<int>(picked.size()) < r2_ && z.imag() < 0) picked.push_back(std::conj(z));
        std::sort(picked.begin(), picked.end(), [](auto& a, auto& b) {
            return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
        });
        for (auto& z : picked) complex_roots_.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    }
    std::vector<std::complex<long double>> places;
    for (auto& iv : real_roots_) places.emplace_back(static_cast<long double>(midpoint_double(iv)), 0.0L);
    for (auto& z : complex_roots_) places.emplace_back(z.real(), z.imag());
    omega_embed_.assign(places.size(), std::vector<std::complex<double>>(static_cast<size_t>(n_)));
    for (size_t k = 0; k < places.size(); ++k)
        for (int i = 0; i < n_; ++i) {
            std::complex<long double> acc = 0;
            for (int j = n_ - 1; j >= 0; --j) acc = acc * places[k] + static_cast<long double>(basis_polys_[i].coeff(j).get_d());
            omega_embed_[k][i] = std::complex<double>(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
        }
    t2_gram_.assign(static_cast<size_t>(n_), std::vector<double>(static_cast<size_t>(n_), 0.0));
    for (size_t k = 0; k < places.size(); ++k) {
        double w = static_cast<int>(k) < r1_ ? 1.0 : 2.0;
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) t2_gram_[a][b] += w * (omega_embed_[k][a] * std::conj(omega_embed_[k][b])).real();
    }
}

double NumberField::minkowski_bound() const {
    double b = std::sqrt(std::fabs(disc_.get_d()));
    for (int i = 0; i < r2_; ++i) b *= 4.0 / M_PI;
    for (int i = 1; i <= n_; ++i) b *= static_cast<double>(i) / n_;
    return b;
}

Elt NumberField::zero() const { return Elt{std::vector<Int>(static_cast<size_t>(n_), Int(0)), 1}; }

Elt NumberField::one() const { return from_int(1); }

Elt NumberField::from_int(const Int& v) const {
    Elt e = zero();
    e.c[0] = v;
    return e;
}

Elt NumberField::from_rat(const Rat& v) const {
    Elt e = zero();
    e.c[0] = v.get_num();
    e.den = v.get_den();
    return e;
}

Elt NumberField::basis(int i) const {
    Elt e = zero();
    e.c[i] = 1;
    return e;
}

Elt NumberField::gen() const { return from_poly(Poly::x()); }

Elt NumberField::from_coeffs(std::vector<Int> c) const {
    if (static_cast<int>(c.size()) != n_) throw MathError("from_coeffs: wrong length");
    return Elt{std::move(c), 1};
}

Elt NumberField::from_poly(const Poly& p0) const {
    Poly p = p0 % poly_;
    std::vector<Rat> coords(static_cast<size_t>(n_), Rat(0));
    for (int j = 0; j <= p.degree(); ++j) {
        if (p.coeff(j) == 0) continue;
        for (int k = 0; k < n_; ++k) coords[k] += p.coeff(j) * power_to_basis_[j][k];
    }
    Int den = 1;
    for (auto& x : coords) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    Elt e;
    for (auto& x : coords) e.c.push_back(Rat(x * den).get_num());
    e.den = den;
    e.normalize();
    return e;
}

Poly NumberField::to_poly(const Elt& a) const {
    Poly acc;
    for (int i = 0; i < n_; ++i)
        if (a.c[i] != 0) acc = acc + basis_polys_[i] * Rat(a.c[i]);
    return acc * make_rat(1, a.den);
}

Elt NumberField::add(const Elt& a, const Elt& b) const {
    Elt r;
    r.den = a.den * b.den;
    for (int i = 0; i < n_; ++i) r.c.push_back(a.c[i] * b.den + b.c[i] * a.den);
    if (a.den == 1 && b.den == 1) return r;
    r.normalize();
    return r;
}

Elt NumberField::neg(const Elt& a) const {
    Elt r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

Elt NumberField::sub(const Elt& a, const Elt& b) const { return add(a, neg(b)); }

std::vector<Int> NumberField::mul_int(const std::vector<Int>& a, const std::vector<Int>& b) const {
    std::vector<Int> r(static_cast<size_t>(n_), Int(0));
    Int f;
    for (int i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < n_; ++j) {
            if (b[j] == 0) continue;
            f = a[i] * b[j];
            const auto& t = table_[i * n_ + j];
            for (int k = 0; k < n_; ++k)
                if (t[k] != 0) r[k] += f * t[k];
        }
    }
    return r;
}

Elt NumberField::mul(const Elt& a, const Elt& b) const {
    Elt r{mul_int(a.c, b.c), a.den * b.den};
    if (r.den != 1) r.normalize();
    return r;
}

Elt NumberField::scale(const Elt& a, const Rat& s) const {
    Elt r = a;
    for (auto& x : r.c) x *= s.get_num();
    r.den *= s.get_den();
    r.normalize();
    return r;
}

IntMatrix NumberField::mult_matrix(const std::vector<Int>& a) const {
    IntMatrix m(static_cast<size_t>(n_), static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            if (a[j] == 0) continue;
            const auto& t = table_[i * n_ + j];
            for (int k = 0; k < n_; ++k)
                if (t[k] != 0) m(i, k) += a[j] * t[k];
        }
    }
    return m;
}

Elt NumberField::inv(const Elt& a) const {
    if (a.is_zero()) throw MathError("inverse of zero");
    IntMatrix m = mult_matrix(a.c);
    RatMatrix rm(static_cast<size_t>(n_), std::vector<Rat>(static_cast<size_t>(n_)));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) rm[i][j] = m(i, j);
    std::vector<Rat> e0(static_cast<size_t>(n_), Rat(0));
    e0[0] = 1;
    auto x = rat_solve_left(rm, e0);
    Int den = 1;
    for (auto& v : x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    Elt r;
    for (auto& v : x) r.c.push_back(Rat(v * den * a.den).get_num());
    r.den = den;
    r.normalize();
    return r;
}

Elt NumberField::pow(const Elt& a, long e) const {
    if (e < 0) return pow(inv(a), -e);
    Elt r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

Int NumberField::norm_int(const std::vector<Int>& a) const { return determinant(mult_matrix(a)); }

Rat NumberField::norm(const Elt& a) const {
    Int dn;
    mpz_pow_ui(dn.get_mpz_t(), a.den.get_mpz_t(), static_cast<unsigned long>(n_));
    return make_rat(norm_int(a.c), dn);
}

Rat NumberField::trace(const Elt& a) const {
    IntMatrix m = mult_matrix(a.c);
    Int t = 0;
    for (int i = 0; i < n_; ++i) t += m(i, i);
    return make_rat(t, a.den);
}

Poly NumberField::char_poly(const Elt& a) const {
    // det(xI - M) by interpolation at x = 0..n.
    IntMatrix m = mult_matrix(a.c);
    std::vector<Rat> xs, ys;
    for (int t = 0; t <= n_; ++t) {
        IntMatrix s(static_cast<size_t>(n_), static_cast<size_t>(n_));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) s(i, j) = (i == j ? Int(t) * a.den : Int(0)) - m(i, j);
        xs.emplace_back(t);
        ys.emplace_back(determinant(s));
    }
    Poly acc;
    for (int i = 0; i <= n_; ++i) {
        Poly term = Poly::constant(ys[i]);
        for (int j = 0; j <= n_; ++j) {
            if (j == i) continue;
            term = term * Poly(std::vector<Rat>{-xs[j], Rat(1)}) * (Rat(1) / (xs[i] - xs[j]));
        }
        acc = acc + term;
    }
    // acc(x) = det(x*den - M) = den^n * charpoly(x) evaluated at... rescale x -> x*den.
    std::vector<Rat> c(static_cast<size_t>(n_ + 1));
    Rat dpow = 1;
    for (int i = 0; i <= n_; ++i) {
        c[i] = acc.coeff(i) * dpow;
        dpow *= Rat(a.den);
    }
    Poly res(c);
    return res.monic();
}

int NumberField::sign(const Elt& a, int place) const {
    if (a.is_zero()) throw MathError("sign of zero");
    return sign_at_root(to_poly(a), poly_, real_roots_.at(static_cast<size_t>(place)));
}

std::vector<int> NumberField::signs(const Elt& a) const {
    std::vector<int> s;
    Poly p = to_poly(a);
    for (auto& iv : real_roots_) s.push_back(sign_at_root(p, poly_, iv));
    return s;
}

std::vector<std::complex<double>> NumberField::embeddings(const Elt& a) const {
    std::vector<std::complex<double>> out;
    double den = a.den.get_d();
    for (auto& place : omega_embed_) {
        std::complex<double> acc = 0;
        for (int i = 0; i < n_; ++i)
            if (a.c[i] != 0) acc += a.c[i].get_d() * place[i];
        out.push_back(acc / den);
    }
    return out;
}

std::string NumberField::describe() const {
    std::ostringstream os;
    os << "Q[x]/(" << poly_.to_string() << "), degree " << n_ << ", disc " << disc_.get_str() << ", signature (" << r1_
       << "," << r2_ << ")";
    return os.str();
}

}  // namespace selmer
