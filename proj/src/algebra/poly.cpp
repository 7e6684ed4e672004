#include "selmer/poly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace selmer {

Poly::Poly(std::vector<Rat> ascending) : c_(std::move(ascending)) {
    for (auto& v : c_) v.canonicalize();
    trim();
}

Poly::Poly(std::initializer_list<long> ascending) {
    for (long v : ascending) c_.emplace_back(v);
    trim();
}

Poly Poly::from_descending(const std::vector<Int>& coeffs) {
    std::vector<Rat> c;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) c.emplace_back(*it);
    return Poly(std::move(c));
}

Poly Poly::monomial(const Rat& c, int k) {
    std::vector<Rat> v(static_cast<size_t>(k) + 1, Rat(0));
    v[k] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

bool Poly::is_integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& v) { return v.get_den() == 1; });
}

std::vector<Int> Poly::int_coeffs() const {
    std::vector<Int> out;
    for (auto& v : c_) {
        if (v.get_den() != 1) throw MathError("polynomial has non-integral coefficients");
        out.push_back(v.get_num());
    }
    return out;
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
}

Poly Poly::operator-() const {
    std::vector<Rat> r(c_);
    for (auto& v : r) v = -v;
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return Poly(std::move(r));
}

Poly Poly::operator*(const Rat& s) const {
    std::vector<Rat> r(c_);
    for (auto& v : r) v *= s;
    return Poly(std::move(r));
}

Rat Poly::eval(const Rat& x) const {
    Rat acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Poly Poly::derivative() const {
    std::vector<Rat> r;
    for (size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * static_cast<long>(i));
    return Poly(std::move(r));
}

Poly Poly::compose(const Poly& inner) const {
    Poly acc;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * inner + Poly::constant(c_[i]);
    return acc;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * (Rat(1) / lead());
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        const Rat& v = c_[i];
        if (v == 0) continue;
        Rat a = abs(v);
        if (!first) os << (v < 0 ? " - " : " + ");
        else if (v < 0) os << "-";
        first = false;
        bool unit = (a == 1);
        if (!unit || i == 0) os << a.get_str();
        if (i > 0) {
            if (!unit) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw MathError("polynomial division by zero");
    std::vector<Rat> rem(a.coeffs());
    int db = b.degree();
    std::vector<Rat> quo(std::max(0, a.degree() - db + 1), Rat(0));
    Rat inv = Rat(1) / b.lead();
    for (int i = a.degree(); i >= db; --i) {
        if (rem[i] == 0) continue;
        Rat f = rem[i] * inv;
        quo[i - db] = f;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.coeff(j);
    }
    q = Poly(std::move(quo));
    r = Poly(std::move(rem));
}

Poly operator%(const Poly& a, const Poly& b) {
    Poly q, r;
    divmod(a, b, q, r);
    return r;
}

Poly operator/(const Poly& a, const Poly& b) {
    Poly q, r;
    divmod(a, b, q, r);
    return q;
}

Poly gcd(const Poly& a0, const Poly& b0) {
    Poly a = a0, b = b0;
    while (!b.is_zero()) {
        Poly r = a % b;
        a = b;
        b = r.monic();
    }
    return a.monic();
}

Rat resultant(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    int m = a.degree(), n = b.degree();
    if (n == 0) {
        Rat r = 1;
        for (int i = 0; i < m; ++i) r *= b.lead();
        return r;
    }
    if (m < n) {
        Rat r = resultant(b, a);
        return ((m * n) % 2) ? Rat(-r) : r;
    }
    Poly r = a % b;
    if (r.is_zero()) return 0;
    Rat factor = 1;
    for (int i = 0; i < m - r.degree(); ++i) factor *= b.lead();
    if ((m * n) % 2) factor = -factor;
    return factor * resultant(b, r);
}

Rat discriminant(const Poly& f) {
    int n = f.degree();
    if (n < 1) throw MathError("discriminant of a constant");
    Rat r = resultant(f, f.derivative()) / f.lead();
    if (((n * (n - 1)) / 2) % 2) r = -r;
    return r;
}

Rat cubic_discriminant(const Poly& f) {
    if (f.degree() != 3 || !f.is_monic()) throw MathError("cubic_discriminant: input must be a monic cubic");
    return discriminant(f);
}

bool is_squarefree(const Poly& f) {
    if (f.degree() <= 0) return true;
    return gcd(f, f.derivative()).degree() == 0;
}

// ---------------------------------------------------------------------------
namespace modp {

void trim(Vec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Vec reduce(const Poly& f, std::uint64_t p) {
    Vec r;
    for (auto& c : f.coeffs()) {
        std::uint64_t den = mod_of(c.get_den(), p);
        if (den == 0) throw MathError("coefficient not p-integral");
        r.push_back(mulmod(mod_of(c.get_num(), p), invmod(den, p), p));
    }
    trim(r);
    return r;
}

Vec add(const Vec& a, const Vec& b, std::uint64_t p) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = (x + y) % p;
    }
    trim(r);
    return r;
}

Vec sub(const Vec& a, const Vec& b, std::uint64_t p) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = (x + p - y) % p;
    }
    trim(r);
    return r;
}

Vec scale(const Vec& a, std::uint64_t s, std::uint64_t p) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], s, p);
    trim(r);
    return r;
}

Vec mul(const Vec& a, const Vec& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
    Vec r(acc.size());
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            acc[i + j] = (acc[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % p;
        }
    }
    for (size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<std::uint64_t>(acc[i]);
    trim(r);
    return r;
}

void divmod(const Vec& a, const Vec& b, std::uint64_t p, Vec& q, Vec& r) {
    if (b.empty()) throw MathError("modular polynomial division by zero");
    r = a;
    trim(r);
    size_t db = b.size() - 1;
    if (r.size() < b.size()) {
        q.clear();
        return;
    }
    q.assign(r.size() - db, 0);
    std::uint64_t inv = invmod(b.back(), p);
    for (size_t i = r.size(); i-- > db;) {
        if (!r[i]) continue;
        std::uint64_t f = mulmod(r[i], inv, p);
        q[i - db] = f;
        for (size_t j = 0; j <= db; ++j) r[i - db + j] = (r[i - db + j] + p - mulmod(f, b[j], p)) % p;
    }
    trim(r);
    trim(q);
}

Vec rem(const Vec& a, const Vec& b, std::uint64_t p) {
    Vec q, r;
    divmod(a, b, p, q, r);
    return r;
}

Vec make_monic(const Vec& a, std::uint64_t p) {
    if (a.empty()) return a;
    return scale(a, invmod(a.back(), p), p);
}

Vec gcd(Vec a, Vec b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Vec r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a, p);
}

Vec derivative(const Vec& a, std::uint64_t p) {
    Vec r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(mulmod(a[i], i % p, p));
    trim(r);
    return r;
}

Vec powmod(Vec base, Int e, const Vec& f, std::uint64_t p) {
    Vec result{1 % p};
    trim(result);
    base = rem(base, f, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = rem(mul(result, base, p), f, p);
        e >>= 1;
        if (e > 0) base = rem(mul(base, base, p), f, p);
    }
    return result;
}

std::uint64_t eval(const Vec& a, std::uint64_t x, std::uint64_t p) {
    std::uint64_t acc = 0;
    for (size_t i = a.size(); i-- > 0;) acc = (mulmod(acc, x, p) + a[i]) % p;
    return acc;
}

Poly lift(const Vec& a) {
    std::vector<Rat> c;
    for (auto v : a) c.emplace_back(Int(static_cast<unsigned long>(v)));
    return Poly(std::move(c));
}

namespace {

// p-th root of a polynomial whose derivative vanishes (all exponents divisible by p).
Vec pth_root(const Vec& a, std::uint64_t p) {
    Vec r;
    for (size_t i = 0; i < a.size(); i += p) r.push_back(a[i]);  // Frobenius is the identity on F_p
    trim(r);
    return r;
}

// Squarefree decomposition: returns (squarefree factor, multiplicity) pairs.
void squarefree_parts(const Vec& f, std::uint64_t p, int mult, std::vector<std::pair<Vec, int>>& out) {
    if (f.size() <= 1) return;
    Vec d = derivative(f, p);
    if (d.empty()) {
        squarefree_parts(pth_root(f, p), p, mult * static_cast<int>(p), out);
        return;
    }
    Vec c = gcd(f, d, p);
    Vec w, tmp;
    divmod(f, c, p, w, tmp);
    int i = 1;
    while (w.size() > 1) {
        Vec y = gcd(w, c, p);
        Vec z;
        divmod(w, y, p, z, tmp);
        if (z.size() > 1) out.emplace_back(make_monic(z, p), i * mult);
        w = y;
        divmod(c, y, p, c, tmp);
        ++i;
    }
    if (c.size() > 1) squarefree_parts(pth_root(c, p), p, mult * static_cast<int>(p), out);
}

void equal_degree_split(const Vec& f, size_t d, std::uint64_t p, Rng& rng, std::vector<Vec>& out) {
    size_t n = f.size() - 1;
    if (n == d) {
        out.push_back(f);
        return;
    }
    while (true) {
        Vec a(n);
        for (auto& v : a) v = rng.below(p);
        trim(a);
        if (a.size() <= 1) continue;
        Vec g;
        if (p == 2) {
            // Trace map a + a^2 + ... + a^(2^(d-1)) splits over F_2.
            Vec t = a, acc = a;
            for (size_t i = 1; i < d; ++i) {
                t = rem(mul(t, t, p), f, p);
                acc = add(acc, t, p);
            }
            g = gcd(f, acc, p);
        } else {
            Int e = 1;
            mpz_ui_pow_ui(e.get_mpz_t(), p, d);
            e = (e - 1) / 2;
            Vec h = powmod(a, e, f, p);
            h = sub(h, Vec{1}, p);
            g = gcd(f, h, p);
        }
        if (g.size() > 1 && g.size() < f.size()) {
            Vec q, r;
            divmod(f, g, p, q, r);
            equal_degree_split(g, d, p, rng, out);
            equal_degree_split(make_monic(q, p), d, p, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<Factor> factor(const Vec& f0, std::uint64_t p, Rng& rng) {
    Vec f = f0;
    trim(f);
    if (f.empty()) throw MathError("factor: zero polynomial");
    std::vector<Factor> result;
    std::vector<std::pair<Vec, int>> parts;
    squarefree_parts(make_monic(f, p), p, 1, parts);
    for (auto& [g0, mult] : parts) {
        Vec g = g0;
        Vec xpow{0, 1};
        Vec x{0, 1};
        for (size_t d = 1; g.size() > 1; ++d) {
            if (2 * d > g.size() - 1) {
                std::vector<Vec> pieces{g};
                for (auto& piece : pieces) result.push_back({make_monic(piece, p), mult});
                break;
            }
            xpow = powmod(xpow, Int(static_cast<unsigned long>(p)), g, p);
            Vec h = gcd(g, sub(xpow, x, p), p);
            if (h.size() > 1) {
                std::vector<Vec> pieces;
                equal_degree_split(h, d, p, rng, pieces);
                for (auto& piece : pieces) result.push_back({make_monic(piece, p), mult});
                Vec q, r;
                divmod(g, h, p, q, r);
                g = q;
                xpow = rem(xpow, g, p);
            }
        }
    }
    std::sort(result.begin(), result.end(), [](const Factor& a, const Factor& b) {
        if (a.poly.size() != b.poly.size()) return a.poly.size() < b.poly.size();
        if (a.poly != b.poly) return std::lexicographical_compare(a.poly.rbegin(), a.poly.rend(), b.poly.rbegin(), b.poly.rend());
        return a.multiplicity < b.multiplicity;
    });
    // Merge identical factors that arrived from different squarefree layers.
    std::vector<Factor> merged;
    for (auto& fac : result) {
        if (!merged.empty() && merged.back().poly == fac.poly) merged.back().multiplicity += fac.multiplicity;
        else merged.push_back(fac);
    }
    return merged;
}

std::vector<std::uint64_t> roots(const Vec& f0, std::uint64_t p, Rng& rng) {
    Vec f = make_monic(f0, p);
    std::vector<std::uint64_t> out;
    if (f.size() <= 1) return out;
    Vec x{0, 1};
    Vec xp = powmod(x, Int(static_cast<unsigned long>(p)), f, p);
    Vec h = gcd(f, sub(xp, x, p), p);
    if (h.size() <= 1) return out;
    std::vector<Vec> pieces;
    equal_degree_split(h, 1, p, rng, pieces);
    for (auto& l : pieces) out.push_back((p - l[0]) % p);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace modp

std::vector<modp::Factor> factor_mod_p(const Poly& f, std::uint64_t p, Rng& rng) {
    if (!is_prime_u64(p)) throw MathError("factor_mod_p: modulus is not prime");
    return modp::factor(modp::reduce(f, p), p, rng);
}

// ---------------------------------------------------------------------------
// Zassenhaus factorization over Z.

namespace {

using ZVec = std::vector<Int>;

void ztrim(ZVec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ZVec zmod(const ZVec& a, const Int& m) {
    ZVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = mod_floor(a[i], m);
    ztrim(r);
    return r;
}

ZVec zmul(const ZVec& a, const ZVec& b, const Int& m) {
    if (a.empty() || b.empty()) return {};
    ZVec r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return zmod(r, m);
}

ZVec zsub(const ZVec& a, const ZVec& b) {
    ZVec r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    ztrim(r);
    return r;
}

ZVec to_z(const modp::Vec& v) {
    ZVec r;
    for (auto x : v) r.emplace_back(static_cast<unsigned long>(x));
    ztrim(r);
    return r;
}

modp::Vec to_p(const ZVec& v, std::uint64_t p) {
    modp::Vec r;
    for (auto& x : v) r.push_back(mod_of(x, p));
    modp::trim(r);
    return r;
}

// Extended gcd over F_p: s*a + t*b = 1 (a, b coprime).
void ext_gcd(const modp::Vec& a, const modp::Vec& b, std::uint64_t p, modp::Vec& s, modp::Vec& t) {
    modp::Vec r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        modp::Vec q, r;
        modp::divmod(r0, r1, p, q, r);
        modp::Vec ns = modp::sub(s0, modp::mul(q, s1, p), p);
        modp::Vec nt = modp::sub(t0, modp::mul(q, t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    std::uint64_t inv = invmod(r0[0], p);
    s = modp::scale(s0, inv, p);
    t = modp::scale(t0, inv, p);
}

// Lift g = A*B mod p to mod p^k, A monic.  Returns (A_k, B_k).
void hensel_two(const ZVec& g, ZVec& A, ZVec& B, std::uint64_t p, int k) {
    modp::Vec Ap = to_p(A, p), Bp = to_p(B, p), S, T;
    ext_gcd(Ap, Bp, p, S, T);
    Int pj = p;
    Int pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
    for (int j = 1; j < k; ++j) {
        ZVec AB = zmul(A, B, pk);
        ZVec diff = zsub(g, AB);
        ZVec e;
        for (auto& c : diff) {
            Int q = mod_floor(c, pk);
            if (q > pk / 2) q -= pk;
            e.push_back(q / pj);
        }
        ztrim(e);
        modp::Vec ep = to_p(e, p);
        modp::Vec eT = modp::mul(ep, T, p), q, a;
        modp::divmod(eT, Ap, p, q, a);
        modp::Vec b = modp::add(modp::mul(ep, S, p), modp::mul(q, Bp, p), p);
        ZVec az = to_z(a), bz = to_z(b);
        A.resize(std::max(A.size(), az.size()), Int(0));
        for (size_t i = 0; i < az.size(); ++i) A[i] += pj * az[i];
        B.resize(std::max(B.size(), bz.size()), Int(0));
        for (size_t i = 0; i < bz.size(); ++i) B[i] += pj * bz[i];
        A = zmod(A, pk);
        B = zmod(B, pk);
        pj *= p;
    }
}

void hensel_multi(const ZVec& g, const std::vector<modp::Vec>& facs, std::uint64_t p, int k, std::vector<ZVec>& out) {
    Int pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
    if (facs.size() == 1) {
        // g itself (made monic mod p^k) is the lifted factor.
        Int lc = g.back();
        Int inv;
        mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), pk.get_mpz_t());
        ZVec m;
        for (auto& c : g) m.push_back(mod_floor(c * inv, pk));
        out.push_back(m);
        return;
    }
    size_t half = facs.size() / 2;
    modp::Vec Ap{1}, Bp{1};
    for (size_t i = 0; i < half; ++i) Ap = modp::mul(Ap, facs[i], p);
    for (size_t i = half; i < facs.size(); ++i) Bp = modp::mul(Bp, facs[i], p);
    Bp = modp::scale(Bp, mod_of(g.back(), p), p);
    ZVec A = to_z(Ap), B = to_z(Bp);
    hensel_two(g, A, B, p, k);
    std::vector<modp::Vec> left(facs.begin(), facs.begin() + half), right(facs.begin() + half, facs.end());
    hensel_multi(A, left, p, k, out);
    hensel_multi(B, right, p, k, out);
}

Int content(const ZVec& v) {
    Int g = 0;
    for (auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

Poly zpoly(const ZVec& v) {
    std::vector<Rat> c(v.begin(), v.end());
    return Poly(std::move(c));
}

// Factor a primitive squarefree integer polynomial with positive leading coefficient.
void zassenhaus(const ZVec& g, Rng& rng, std::vector<Poly>& out) {
    int n = static_cast<int>(g.size()) - 1;
    if (n <= 1) {
        out.push_back(zpoly(g));
        return;
    }
    // Choose a prime with good reduction and few modular factors.
    std::uint64_t best_p = 0;
    std::vector<modp::Vec> best;
    int tried = 0;
    for (std::uint64_t p : primes_up_to(2000)) {
        if (mod_of(g.back(), p) == 0) continue;
        modp::Vec gp = to_p(g, p);
        if (modp::gcd(gp, modp::derivative(gp, p), p).size() > 1) continue;
        auto fs = modp::factor(gp, p, rng);
        if (best_p == 0 || fs.size() < best.size()) {
            best_p = p;
            best.clear();
            for (auto& f : fs) best.push_back(f.poly);
        }
        if (best.size() == 1 || ++tried >= 5) break;
    }
    if (best_p == 0) throw MathError("zassenhaus: no prime of good reduction found");
    if (best.size() == 1) {
        out.push_back(zpoly(g));
        return;
    }
    // Coefficient bound for any factor (Mignotte), times the leading coefficient.
    Int norm2 = 0;
    for (auto& c : g) norm2 += c * c;
    Int bound = (isqrt(norm2) + 1) * (Int(1) << n) * abs(g.back()) * 2 + 1;
    int k = 1;
    Int pk = best_p;
    while (pk <= bound) {
        pk *= best_p;
        ++k;
    }
    std::vector<ZVec> lifted;
    hensel_multi(g, best, best_p, k, lifted);

    ZVec rest = g;
    std::vector<size_t> alive(lifted.size());
    for (size_t i = 0; i < alive.size(); ++i) alive[i] = i;
    for (size_t size = 1; 2 * size <= alive.size();) {
        bool found = false;
        std::vector<size_t> pick(size);
        std::function<bool(size_t, size_t)> rec = [&](size_t start, size_t depth) -> bool {
            if (depth == size) {
                ZVec h{rest.back()};
                for (size_t idx : pick) h = zmul(h, lifted[idx], pk);
                for (auto& c : h)
                    if (c > pk / 2) c -= pk;
                ztrim(h);
                Int ct = content(h);
                for (auto& c : h) c /= ct;
                Poly hp = zpoly(h), q, r;
                divmod(zpoly(rest), hp, q, r);
                if (!r.is_zero() || !q.is_integral()) return false;
                if (h.back() < 0)
                    for (auto& c : h) c = -c;
                out.push_back(zpoly(h));
                rest = q.int_coeffs();
                if (rest.back() < 0)
                    for (auto& c : rest) c = -c;
                std::vector<size_t> next;
                for (size_t a : alive)
                    if (std::find(pick.begin(), pick.end(), a) == pick.end()) next.push_back(a);
                alive = next;
                return true;
            }
            for (size_t i = start; i < alive.size(); ++i) {
                pick[depth] = alive[i];
                if (rec(i + 1, depth + 1)) return true;
            }
            return false;
        };
        found = rec(0, 0);
        if (!found) ++size;
    }
    out.push_back(zpoly(rest));
}

}  // namespace

IntFactorization factor_over_Z(const Poly& f, Rng& rng) {
    if (!f.is_integral() || f.is_zero()) throw MathError("factor_over_Z: need a nonzero integral polynomial");
    ZVec v = f.int_coeffs();
    Int ct = content(v);
    if (v.back() < 0) ct = -ct;
    IntFactorization result;
    result.unit = ct;
    Poly prim = f * Rat(1, 1) * (Rat(1) / Rat(ct));
    if (prim.degree() == 0) return result;
    // Squarefree decomposition over Q (Yun).
    Poly a = prim;
    Poly c = gcd(a, a.derivative());
    Poly w = a / c;
    int i = 1;
    auto primitive = [](const Poly& p) {
        Int den = 1;
        for (auto& x : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
        ZVec z;
        for (auto& x : p.coeffs()) z.push_back(Rat(x * den).get_num());
        Int ctt = content(z);
        if (z.back() < 0) ctt = -ctt;
        for (auto& x : z) x /= ctt;
        return z;
    };
    while (w.degree() > 0) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (z.degree() > 0) {
            std::vector<Poly> parts;
            zassenhaus(primitive(z), rng, parts);
            for (auto& p : parts) result.factors.emplace_back(p, i);
        }
        w = y;
        c = c / y;
        ++i;
    }
    std::sort(result.factors.begin(), result.factors.end(), [](const auto& x, const auto& y) {
        if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
        return x.first.to_string() < y.first.to_string();
    });
    return result;
}

bool find_rational_factor(const Poly& f, Rng& rng, Poly& witness) {
    auto fac = factor_over_Z(f, rng);
    int total = 0;
    for (auto& [p, e] : fac.factors) total += e;
    if (total <= 1) return false;
    witness = fac.factors.front().first;
    return true;
}

}  // namespace selmer
