#include "selmer/classgroup.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "selmer/simd.hpp"

namespace selmer {

namespace {

constexpr std::uint64_t kBigPrime = 2305843009213693951ULL;  // 2^61 - 1

// Gram matrix of the rows of B under the ambient Gram G.
std::vector<std::vector<double>> sub_gram(const IntMatrix& B, const std::vector<std::vector<double>>& G) {
    size_t r = B.rows(), n = B.cols();
    std::vector<std::vector<double>> b(r, std::vector<double>(n));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < n; ++j) b[i][j] = B(i, j).get_d();
    std::vector<std::vector<double>> out(r, std::vector<double>(r, 0.0));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j <= i; ++j) {
            double s = 0;
            for (size_t a = 0; a < n; ++a) {
                if (b[i][a] == 0) continue;
                double t = 0;
                for (size_t c = 0; c < n; ++c) t += G[a][c] * b[j][c];
                s += b[i][a] * t;
            }
            out[i][j] = out[j][i] = s;
        }
    return out;
}

// All nonzero integer vectors x with x^T Q x <= bound (Q positive definite).
std::vector<std::vector<long>> short_vectors(const std::vector<std::vector<double>>& Q, double bound) {
    size_t n = Q.size();
    std::vector<std::vector<double>> q = Q;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] = q[i][j] / q[i][i];
        }
        for (size_t k = i + 1; k < n; ++k)
            for (size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
    std::vector<std::vector<long>> out;
    std::vector<long> x(n, 0);
    std::function<void(long, double)> rec = [&](long i, double rem) {
        double c = 0;
        for (size_t j = static_cast<size_t>(i) + 1; j < n; ++j) c += q[i][j] * static_cast<double>(x[j]);
        double r = std::sqrt(std::max(0.0, rem / q[i][i]));
        long lo = static_cast<long>(std::ceil(-c - r - 1e-9)), hi = static_cast<long>(std::floor(-c + r + 1e-9));
        for (long v = lo; v <= hi; ++v) {
            x[i] = v;
            double t = rem - q[i][i] * (static_cast<double>(v) + c) * (static_cast<double>(v) + c);
            if (t < -1e-6) continue;
            if (i == 0) {
                bool zero = std::all_of(x.begin(), x.end(), [](long z) { return z == 0; });
                if (!zero) out.push_back(x);
            } else {
                rec(i - 1, t);
            }
            if (out.size() > 100000) throw MathError("short_vectors: too many vectors");
        }
        x[i] = 0;
    };
    if (n) rec(static_cast<long>(n) - 1, bound);
    return out;
}

std::uint64_t powmod_u(std::uint64_t b, std::uint64_t e, std::uint64_t m) { return powmod(b, e, m); }

// Rank of rows over F_p for arbitrary p < 2^62.
std::size_t fp_rank_big(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p) {
    if (rows.empty()) return 0;
    size_t w = rows[0].size(), rank = 0;
    for (size_t col = 0; col < w && rank < rows.size(); ++col) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        std::uint64_t inv = invmod(rows[rank][col], p);
        for (size_t i = rank + 1; i < rows.size(); ++i) {
            if (!rows[i][col]) continue;
            std::uint64_t f = mulmod(rows[i][col], inv, p);
            for (size_t k = col; k < w; ++k) rows[i][k] = (rows[i][k] + p - mulmod(f, rows[rank][k], p)) % p;
        }
        ++rank;
    }
    return rank;
}

std::size_t rank_mod(const std::vector<std::vector<std::uint64_t>>& rows, std::uint64_t p) {
    if (p < (1u << 15)) {
        std::vector<std::vector<std::uint32_t>> r32;
        for (auto& r : rows) r32.emplace_back(r.begin(), r.end());
        return fp_rank(r32, static_cast<std::uint32_t>(p));
    }
    return fp_rank_big(rows, p);
}

// Residues omega_i mod (q, theta - r) for q not dividing the index.
std::vector<std::uint64_t> degree_one_residues(const NumberField& K, std::uint64_t q, std::uint64_t r) {
    int n = K.degree();
    std::uint64_t dinv = invmod(mod_of(K.basis_den(), q), q);
    std::vector<std::uint64_t> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::uint64_t acc = 0, pw = 1;
        for (int j = 0; j < n; ++j) {
            acc = (acc + mulmod(mod_of(K.basis_num()(i, j), q), pw, q)) % q;
            pw = mulmod(pw, r, q);
        }
        out[i] = mulmod(acc, dinv, q);
    }
    return out;
}

std::uint64_t reduce_at(const std::vector<std::uint64_t>& residue, const std::vector<Int>& a, std::uint64_t q) {
    std::uint64_t acc = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) acc = (acc + mulmod(mod_of(a[i], q), residue[i], q)) % q;
    return acc;
}

// Degree-one primes of norm q > lower with q = 1 mod ell, q prime to the polynomial discriminant.
std::vector<CharPrime> find_char_primes(const NumberField& K, std::uint64_t ell, std::uint64_t lower, std::size_t count,
                                        Rng& rng) {
    std::vector<CharPrime> out;
    std::uint64_t q = lower + 1;
    q += (ell - (q - 1) % ell) % ell;  // q = 1 mod ell
    if (ell == 2 && q % 2 == 0) ++q;
    while (out.size() < count) {
        if (is_prime_u64(q) && mod_of(K.poly_disc(), q) != 0) {
            auto roots = modp::roots(modp::reduce(K.poly(), q), q, rng);
            // One prime per q: conjugate primes give correlated characters.
            if (!roots.empty()) out.push_back(CharPrime{q, degree_one_residues(K, q, roots[rng.below(roots.size())])});
        }
        q += (ell == 2) ? 2 : ell;
        if (ell != 2 && q % 2 == 0) q += ell;  // keep q odd
    }
    return out;
}

// Discrete log of t in the cyclic group <z> of order ell (baby-step giant-step).
std::uint64_t dlog_mu(std::uint64_t t, std::uint64_t z, std::uint64_t ell, std::uint64_t q) {
    if (t == 1) return 0;
    std::uint64_t m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(ell))));
    std::unordered_map<std::uint64_t, std::uint64_t> baby;
    std::uint64_t cur = 1;
    for (std::uint64_t j = 0; j < m; ++j) {
        baby.emplace(cur, j);
        cur = mulmod(cur, z, q);
    }
    std::uint64_t giant = invmod(powmod_u(z, m, q), q);
    std::uint64_t g = t;
    for (std::uint64_t i = 0; i <= m; ++i) {
        auto it = baby.find(g);
        if (it != baby.end()) return (i * m + it->second) % ell;
        g = mulmod(g, giant, q);
    }
    throw MathError("dlog_mu: element not in subgroup");
}

// ell-th power residue characters of the generators at the given primes.
std::vector<std::vector<std::uint64_t>> power_characters(const std::vector<Elt>& gens, const std::vector<CharPrime>& Qs,
                                                         std::uint64_t ell) {
    std::vector<std::vector<std::uint64_t>> rows(gens.size(), std::vector<std::uint64_t>(Qs.size(), 0));
    for (size_t k = 0; k < Qs.size(); ++k) {
        std::uint64_t q = Qs[k].q, e = (q - 1) / ell;
        std::uint64_t z = 1;
        for (std::uint64_t h = 2; z == 1; ++h) z = powmod_u(h, e, q);
        for (size_t j = 0; j < gens.size(); ++j) {
            std::uint64_t r = reduce_at(Qs[k].residue, gens[j].c, q);
            if (gens[j].den != 1) r = mulmod(r, invmod(mod_of(gens[j].den, q), q), q);
            if (r == 0) throw MathError("power_characters: generator not coprime to character prime");
            std::uint64_t t = powmod_u(r, e, q);
            rows[j][k] = ell == 2 ? (t == 1 ? 0 : 1) : dlog_mu(t, z, ell, q);
        }
    }
    return rows;
}

struct FbIndex {
    std::map<std::uint64_t, std::vector<int>> by_p;  // rational prime -> factor-base indices
    std::vector<std::uint64_t> primes;                // sorted rational primes below S
};

// Trial-divide N over the factor-base primes; returns false if N is not smooth.
bool smooth_part(Int N, const FbIndex& idx, std::vector<std::pair<std::uint64_t, int>>& fac) {
    fac.clear();
    N = abs(N);
    if (N == 0) return false;
    for (auto p : idx.primes) {
        if (N == 1) break;
        if (mpz_divisible_ui_p(N.get_mpz_t(), p)) {
            int e = 0;
            while (mpz_divisible_ui_p(N.get_mpz_t(), p)) {
                mpz_divexact_ui(N.get_mpz_t(), N.get_mpz_t(), p);
                ++e;
            }
            fac.emplace_back(p, e);
        }
    }
    return N == 1;
}

// Valuation vector of a over S if (a) is supported on S; empty optional otherwise.
bool s_valuations(const NumberField& K, const std::vector<PrimeIdeal>& fb, const FbIndex& idx, const std::vector<Int>& a,
                  std::vector<Int>& row) {
    Int N = K.norm_int(a);
    std::vector<std::pair<std::uint64_t, int>> fac;
    if (!smooth_part(N, idx, fac)) return false;
    row.assign(fb.size(), Int(0));
    for (auto& [p, e] : fac) {
        int acc = 0;
        for (int i : idx.by_p.at(p)) {
            int v = valuation_int(K, fb[i], a);
            row[i] = v;
            acc += v * fb[i].f;
        }
        if (acc != e) return false;
    }
    return true;
}

// Exact solve y*H = x for upper-triangular full-rank H with x in the row lattice.
std::vector<Int> solve_upper(const IntMatrix& H, const std::vector<Int>& x) {
    size_t n = H.rows();
    std::vector<Int> y(n), r = x;
    for (size_t i = 0; i < n; ++i) {
        if (r[i] % H(i, i) != 0) throw MathError("solve_upper: vector not in lattice");
        y[i] = r[i] / H(i, i);
        if (y[i] != 0)
            for (size_t j = i; j < n; ++j) r[j] -= y[i] * H(i, j);
    }
    return y;
}

// Rows of `m` forming a maximal independent set (rank over a large prime).
std::vector<size_t> independent_rows(const IntMatrix& m) {
    size_t w = m.cols();
    std::vector<std::vector<std::uint64_t>> ech;
    std::vector<size_t> piv_col, chosen;
    for (size_t i = 0; i < m.rows() && chosen.size() < w; ++i) {
        std::vector<std::uint64_t> v(w);
        for (size_t j = 0; j < w; ++j) v[j] = mod_of(m(i, j), kBigPrime);
        for (size_t k = 0; k < ech.size(); ++k) {
            std::uint64_t f = v[piv_col[k]];
            if (!f) continue;
            for (size_t j = 0; j < w; ++j) v[j] = (v[j] + kBigPrime - mulmod(f, ech[k][j], kBigPrime)) % kBigPrime;
        }
        size_t pc = 0;
        while (pc < w && v[pc] == 0) ++pc;
        if (pc == w) continue;
        std::uint64_t inv = invmod(v[pc], kBigPrime);
        for (auto& x : v) x = mulmod(x, inv, kBigPrime);
        ech.push_back(v);
        piv_col.push_back(pc);
        chosen.push_back(i);
    }
    return chosen;
}

double auto_fb_bound(const NumberField& K) {
    double ld = std::log(std::max(2.0, std::fabs(K.disc().get_d())));
    double b = 0.6 * ld * ld;
    b = std::min(b, K.minkowski_bound());
    b = std::max(b, 30.0);
    return std::min(b, 4000.0);
}

// Proves that the prime with lattice basis B (norm Np) is a product of
// primes of smaller norm times a principal ideal.
bool prove_prime(const NumberField& K, const IntMatrix& B, const Int& Np, Rng& rng) {
    const auto& G = K.t2_gram();
    IntMatrix R = lll_reduce(B, G);
    int n = K.degree();
    auto check = [&](const std::vector<Int>& c) -> int {
        bool zero = std::all_of(c.begin(), c.end(), [](const Int& x) { return x == 0; });
        if (zero) return 0;
        Int N = abs(K.norm_int(c));
        if (N % Np != 0) throw MathError("prove_prime: element not in ideal");
        Int cof = N / Np;
        if (cof < Np) return 1;
        return 0;
    };
    for (int i = 0; i < n; ++i)
        if (check(R.row(i))) return true;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int s : {1, -1}) {
                auto c = R.row(i);
                for (int k = 0; k < n; ++k) c[k] += s * R(j, k);
                if (check(c)) return true;
            }
    for (int t = 0; t < 400; ++t) {
        std::vector<Int> c(static_cast<size_t>(n), Int(0));
        for (int i = 0; i < n; ++i) {
            long co = rng.range(-3, 3);
            if (!co) continue;
            for (int k = 0; k < n; ++k) c[k] += co * R(i, k);
        }
        if (check(c)) return true;
    }
    return false;
}

// Exact check for a prime whose cofactor test failed: find c in P with
// v_P(c) = 1 such that every other prime dividing (c) has norm below N(P).
// Candidates are short vectors of P, then short vectors of P*I for random
// products I of small primes (different lattices give independent chances of
// a smooth cofactor), then random combinations of the reduced basis of P.
bool prove_prime_exact(const NumberField& K, const PrimeIdeal& P, Rng& rng) {
    const auto& G = K.t2_gram();
    int n = K.degree();
    Int Np = ideal_norm(P.ideal).get_num();
    auto good = [&](const std::vector<Int>& c) {
        if (std::all_of(c.begin(), c.end(), [](const Int& x) { return x == 0; })) return false;
        if (valuation_int(K, P, c) != 1) return false;
        Int cof = abs(K.norm_int(c)) / Np;
        for (auto& [q, e] : factor_integer(cof)) {
            if (q >= Np) return false;
            for (auto& Q : decompose_prime(K, q)) {
                if (ideal_norm(Q.ideal) < Rat(Np)) continue;
                if (valuation_int(K, Q, c) > 0) return false;
            }
        }
        return true;
    };
    // Tests the short vectors of the lattice H, at most `budget` of them.
    auto search = [&](const IntMatrix& H, std::size_t budget) {
        IntMatrix R = lll_reduce(H, G);
        auto gram = sub_gram(R, G);
        auto combine = [&](const std::vector<long>& x) {
            std::vector<Int> c(static_cast<size_t>(n), Int(0));
            for (int i = 0; i < n; ++i)
                if (x[static_cast<size_t>(i)])
                    for (int k = 0; k < n; ++k) c[k] += x[static_cast<size_t>(i)] * R(i, k);
            return c;
        };
        auto qf = [&](const std::vector<long>& x) {
            double s = 0;
            for (size_t i = 0; i < x.size(); ++i)
                for (size_t j = 0; j < x.size(); ++j) s += gram[i][j] * static_cast<double>(x[i] * x[j]);
            return s;
        };
        double bound = 1.5 * gram[0][0], previous = -1;
        std::size_t tested = 0;
        for (int round = 0; round < 12 && tested < budget; ++round, previous = bound, bound *= 2) {
            std::vector<std::vector<long>> vecs;
            try {
                vecs = short_vectors(gram, bound);
            } catch (const MathError&) {
                break;
            }
            // Vectors come in pairs +-x with equal norms: test one of each, and
            // skip those already seen in the previous round.
            for (auto& x : vecs) {
                auto nz = std::find_if(x.begin(), x.end(), [](long z) { return z != 0; });
                if (*nz < 0 || qf(x) <= previous * (1 - 1e-9)) continue;
                if (++tested > budget) break;
                if (good(combine(x))) return true;
            }
        }
        for (std::size_t t = 0; t < budget / 10; ++t) {
            std::vector<long> x(static_cast<size_t>(n));
            for (auto& v : x) v = rng.range(-4, 4);
            if (good(combine(x))) return true;
        }
        return false;
    };

    if (search(P.ideal.H, 20000)) return true;
    std::vector<FractionalIdeal> pool;
    for (auto q : primes_up_to(100)) {
        Int Q(static_cast<unsigned long>(q));
        if (Q >= Np) break;
        for (auto& D : decompose_prime(K, Q))
            if (ideal_norm(D.ideal) < Rat(Np)) pool.push_back(D.ideal);
    }
    if (pool.empty()) return false;
    for (int t = 0; t < 400; ++t) {
        FractionalIdeal J = P.ideal;
        for (long k = rng.range(1, 3); k > 0; --k) J = ideal_mul(K, J, pool[rng.below(pool.size())]);
        if (search(J.H, 200)) return true;
    }
    return false;
}

long minkowski_sweep(const NumberField& K, double fb_bound, double mb, Rng& rng) {
    long count = 0;
    if (mb <= fb_bound) return 0;
    std::uint64_t MB = static_cast<std::uint64_t>(std::floor(mb));
    std::uint64_t FB = static_cast<std::uint64_t>(std::floor(fb_bound));
    int n = K.degree();
    for (auto p : primes_up_to(MB)) {
        Int P(static_cast<unsigned long>(p));
        bool small = static_cast<double>(p) * static_cast<double>(p) <= mb;
        if (small || K.index() % P == 0) {
            for (auto& Q : decompose_prime(K, P)) {
                Int N = ideal_norm(Q.ideal).get_num();
                if (N <= FB || N > MB) continue;
                ++count;
                if (!prove_prime(K, Q.ideal.H, N, rng) && !prove_prime_exact(K, Q, rng))
                    throw MathError("class group: could not reduce prime " + Q.label);
            }
            continue;
        }
        if (p <= FB) continue;
        auto roots = modp::roots(modp::reduce(K.poly(), p), p, rng);
        for (auto r : roots) {
            auto res = degree_one_residues(K, p, r);
            IntMatrix B(static_cast<size_t>(n), static_cast<size_t>(n));
            B(0, 0) = P;
            for (int i = 1; i < n; ++i) {
                B(i, i) = 1;
                B(i, 0) = -Int(static_cast<unsigned long>(res[i]));
            }
            ++count;
            if (prove_prime(K, B, P, rng)) continue;
            // Fall back to the full prime ideal structure.
            bool done = false;
            for (auto& Q : decompose_prime(K, P)) {
                if (Q.f != 1 || Q.residue != res) continue;
                done = prove_prime_exact(K, Q, rng);
            }
            if (!done) throw MathError("class group: could not reduce a degree-one prime above " + std::to_string(p));
        }
    }
    return count;
}

}  // namespace

std::pair<int, Elt> roots_of_unity(const NumberField& K) {
    if (K.r1() > 0) return {2, K.from_int(-1)};
    int n = K.degree();
    IntMatrix T;
    IntMatrix R = lll_reduce(IntMatrix::identity(static_cast<size_t>(n)), K.t2_gram(), 0.99, &T);
    auto gram = sub_gram(R, K.t2_gram());
    auto vecs = short_vectors(gram, n + 0.01);
    int w = 0;
    Elt best = K.from_int(-1);
    int best_order = 2;
    for (auto& x : vecs) {
        std::vector<Int> c(static_cast<size_t>(n), Int(0));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) c[k] += x[i] * R(i, k);
        Elt e = K.from_coeffs(c);
        if (abs(K.norm(e)) != 1) continue;
        Elt p = e;
        int ord = 1;
        while (p != K.one() && ord <= 200) {
            p = K.mul(p, e);
            ++ord;
        }
        if (ord > 200) continue;
        ++w;
        if (ord > best_order) {
            best_order = ord;
            best = e;
        }
    }
    return {std::max(w, 2), best};
}

Int ClassGroupData::order() const {
    Int h = 1;
    for (auto& d : invariants) h *= d;
    return h;
}

int ClassGroupData::two_rank() const {
    int r = 0;
    for (auto& d : invariants)
        if (d % 2 == 0) ++r;
    return r;
}

Int ModifiedClassGroup::order() const {
    Int h = 1;
    for (auto& d : invariants) h *= d;
    return h;
}

std::string format_invariants(const std::vector<Int>& inv) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < inv.size(); ++i) os << (i ? ", " : "") << inv[i].get_str();
    os << "]";
    return os.str();
}

ClassGroupData class_group(const FieldPtr& Kp, const ClassGroupOptions& opts) {
    const NumberField& K = *Kp;
    int n = K.degree();
    ClassGroupData cg;
    cg.K = Kp;
    Rng rng(opts.seed);
    cg.minkowski = K.minkowski_bound();
    cg.fb_bound = opts.fb_bound > 0 ? opts.fb_bound : auto_fb_bound(K);

    // Factor base.
    FbIndex idx;
    for (auto p : primes_up_to(static_cast<std::uint64_t>(cg.fb_bound))) {
        for (auto& P : decompose_prime(K, Int(static_cast<unsigned long>(p)))) {
            if (ideal_norm(P.ideal) > Rat(Int(static_cast<unsigned long>(cg.fb_bound)))) continue;
            idx.by_p[p].push_back(static_cast<int>(cg.fb.size()));
            cg.fb.push_back(P);
        }
    }
    for (auto& [p, v] : idx.by_p) idx.primes.push_back(p);
    size_t S = cg.fb.size();

    // Generation: every prime up to the Minkowski bound reduces to smaller ones.
    if (opts.prove_generation) cg.swept = minkowski_sweep(K, cg.fb_bound, cg.minkowski, rng);

    auto [w, zeta] = roots_of_unity(K);
    cg.torsion = w;
    cg.gens.push_back(zeta);
    std::vector<std::vector<Int>> rows;
    rows.emplace_back(S, Int(0));
    std::set<std::vector<Int>> seen;
    auto add_relation = [&](std::vector<Int> c) {
        bool zero = std::all_of(c.begin(), c.end(), [](const Int& x) { return x == 0; });
        if (zero) return false;
        // Normalise sign so that +-c are identified.
        for (auto& x : c) {
            if (x == 0) continue;
            if (x < 0)
                for (auto& y : c) y = -y;
            break;
        }
        if (seen.count(c)) return false;
        std::vector<Int> row;
        if (!s_valuations(K, cg.fb, idx, c, row)) return false;
        seen.insert(c);
        cg.gens.push_back(K.from_coeffs(c));
        rows.push_back(row);
        return true;
    };
    const auto& G = K.t2_gram();
    auto search = [&](size_t target) {
        long attempts = 0;
        while (rows.size() < target) {
            if (++attempts > 200000) throw MathError("class group: relation search exhausted");
            FractionalIdeal I = ideal_unit(K);
            int k = S ? static_cast<int>(rng.range(0, std::min<long>(3, static_cast<long>(S)))) : 0;
            for (int t = 0; t < k; ++t) {
                const auto& P = cg.fb[rng.below(S)];
                I = ideal_mul(K, I, P.ideal);
            }
            IntMatrix R = lll_reduce(I.H, G);
            std::vector<std::vector<Int>> cands;
            for (int i = 0; i < n; ++i) cands.push_back(R.row(i));
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    for (int s : {1, -1}) {
                        auto c = R.row(i);
                        for (int q = 0; q < n; ++q) c[q] += s * R(j, q);
                        cands.push_back(c);
                    }
            for (int t = 0; t < n; ++t) {
                std::vector<Int> c(static_cast<size_t>(n), Int(0));
                for (int i = 0; i < n; ++i) {
                    long co = rng.range(-2, 2);
                    for (int q = 0; q < n; ++q) c[q] += co * R(i, q);
                }
                cands.push_back(c);
            }
            for (auto& c : cands) add_relation(c);
        }
    };

    // Short elements of O: these supply small units that random ideal
    // elements tend to miss (e.g. square roots of products of units).
    {
        IntMatrix R = lll_reduce(IntMatrix::identity(static_cast<size_t>(n)), G);
        auto gram = sub_gram(R, G);
        double bound = 2.0 * gram[0][0] + n;
        std::vector<std::vector<long>> vecs;
        for (int tries = 0; tries < 6; ++tries) {
            try {
                vecs = short_vectors(gram, bound);
                if (vecs.size() <= 4000) break;
            } catch (const MathError&) {
            }
            bound *= 0.6;
            vecs.clear();
        }
        for (auto& x : vecs) {
            std::vector<Int> c(static_cast<size_t>(n), Int(0));
            for (int i = 0; i < n; ++i)
                if (x[i])
                    for (int q = 0; q < n; ++q) c[q] += x[i] * R(i, q);
            add_relation(c);
        }
    }

    size_t target = S + static_cast<size_t>(opts.extra_relations) + static_cast<size_t>(n) + 1;
    size_t r_unit = static_cast<size_t>(K.r1() + K.r2() - 1);
    bool done = false;
    for (int round = 0; round < opts.max_rounds && !done; ++round) {
        search(target);
        target += S / 2 + 10;
        IntMatrix A(rows.size(), S);
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < S; ++j) A(i, j) = rows[i][j];
        IntMatrix H;
        Int hprime = 1;
        if (S > 0) {
            auto ind = independent_rows(A);
            if (ind.size() < S) continue;
            IntMatrix sub(S, S);
            for (size_t i = 0; i < S; ++i)
                for (size_t j = 0; j < S; ++j) sub(i, j) = A(ind[i], j);
            Int D0 = abs(determinant(sub));
            H = hnf_basis(hnf_mod(A, D0));
            for (size_t i = 0; i < S; ++i) hprime *= H(i, i);
        }
        // Saturation at 2 and at every prime dividing h'.
        std::vector<Int> ells{Int(2)};
        for (auto& [l, e] : factor_integer(hprime))
            if (l != 2) ells.push_back(l);
        bool ok = true;
        std::vector<Int> sat;
        for (auto& L : ells) {
            if (!L.fits_ulong_p() || L > Int(1) << 40) {
                ok = false;
                break;
            }
            std::uint64_t ell = L.get_ui();
            size_t need = r_unit + S + (w % static_cast<long>(ell) == 0 ? 1 : 0);
            std::vector<CharPrime> Qs = find_char_primes(
                K, ell, std::max<std::uint64_t>(static_cast<std::uint64_t>(cg.fb_bound), 2 * ell), 2 * need + 32, rng);
            auto chi = power_characters(cg.gens, Qs, ell);
            size_t rk = rank_mod(chi, ell);
            if (rk < need) {
                ok = false;
                break;
            }
            sat.push_back(L);
            if (ell == 2) {
                cg.char_primes = Qs;
                cg.chars.clear();
                for (auto& r : chi) {
                    BitVec b(Qs.size());
                    for (size_t k = 0; k < r.size(); ++k)
                        if (r[k]) b.set(k);
                    cg.chars.push_back(b);
                }
            }
        }
        if (!ok) continue;
        cg.vals = A;
        cg.lattice = S ? H : IntMatrix(0, 0);
        cg.saturated_at = sat;
        done = true;
    }
    if (!done) throw MathError("class group: relations did not saturate within the round limit");

    // Structure.
    if (S > 0) {
        auto snf = snf_with_transform(cg.lattice);
        cg.divisors = snf.divisors;
        cg.V = snf.V;
        cg.Vinv = inverse_unimodular(snf.V);
        for (size_t i = snf.divisors.size(); i-- > 0;)
            if (snf.divisors[i] != 1) {
                cg.invariants.push_back(snf.divisors[i]);
                cg.invariant_index.push_back(static_cast<int>(i));
            }
    }
    // Signs of generators.
    for (auto& g : cg.gens) {
        BitVec b(static_cast<size_t>(K.r1()));
        auto s = K.signs(g);
        for (size_t k = 0; k < s.size(); ++k)
            if (s[k] < 0) b.set(k);
        cg.signs.push_back(b);
    }
    // F2 basis of Gamma / Gamma^2 in character coordinates.
    {
        std::vector<BitVec> ech;
        std::vector<size_t> piv;
        std::vector<BitVec> comb;  // combination of chosen basis vectors for each echelon row
        for (size_t j = 0; j < cg.chars.size(); ++j) {
            BitVec v = cg.chars[j];
            BitVec c(cg.chars.size());
            c.set(cg.sq_basis.size());
            for (size_t k = 0; k < ech.size(); ++k)
                if (v.get(piv[k])) {
                    v ^= ech[k];
                    c ^= comb[k];
                }
            if (v.is_zero()) continue;
            piv.push_back(v.lowest_set());
            ech.push_back(v);
            comb.push_back(c);
            cg.sq_basis.push_back(static_cast<int>(j));
        }
        size_t D = cg.sq_basis.size();
        for (size_t j = 0; j < cg.chars.size(); ++j) {
            BitVec v = cg.chars[j];
            BitVec c(cg.chars.size());
            for (size_t k = 0; k < ech.size(); ++k)
                if (v.get(piv[k])) {
                    v ^= ech[k];
                    c ^= comb[k];
                }
            if (!v.is_zero()) throw MathError("class group: character coordinates inconsistent");
            cg.sq_coords.push_back(c.slice(0, D));
        }
    }
    cg.certified = true;
    std::ostringstream os;
    os << "generation proved up to Minkowski bound " << static_cast<long>(cg.minkowski) << " (" << cg.swept
       << " primes beyond the factor base), relations saturated at";
    for (auto& l : cg.saturated_at) os << " " << l.get_str();
    cg.trust = os.str();
    return cg;
}

BitVec quadratic_characters(const ClassGroupData& cg, const Elt& x) {
    Elt y = x;
    if (y.den != 1) {
        // multiply by den^2 (a square) to make x integral
        for (auto& c : y.c) c *= y.den;
        y.den = 1;
    }
    auto rows = power_characters({y}, cg.char_primes, 2);
    BitVec b(cg.char_primes.size());
    for (size_t k = 0; k < rows[0].size(); ++k)
        if (rows[0][k]) b.set(k);
    return b;
}

BitVec sq_class(const ClassGroupData& cg, const Elt& x) {
    BitVec target = quadratic_characters(cg, x);
    std::vector<BitVec> rows;
    for (int j : cg.sq_basis) rows.push_back(cg.chars[static_cast<size_t>(j)]);
    auto sol = f2_solve(rows, target);
    if (!sol) throw MathError("sq_class: element is not an S-unit for the factor base");
    return *sol;
}

std::vector<BitVec> sq_basis_signs(const ClassGroupData& cg) {
    std::vector<BitVec> out;
    for (int j : cg.sq_basis) out.push_back(cg.signs[static_cast<size_t>(j)]);
    return out;
}

UnitData units_mod_squares(const ClassGroupData& cg) {
    const NumberField& K = *cg.K;
    UnitData U;
    size_t D = cg.sq_dim(), S = cg.fb.size();
    // Map Gamma/Gamma^2 -> Lambda / 2 Lambda; units are the kernel.
    F2Map f(D, S);
    for (size_t i = 0; i < D; ++i) {
        size_t j = static_cast<size_t>(cg.sq_basis[i]);
        if (S == 0) continue;
        auto y = solve_upper(cg.lattice, cg.vals.row(j));
        for (size_t k = 0; k < S; ++k)
            if (mpz_odd_p(y[k].get_mpz_t())) f.images[i].set(k);
    }
    U.basis = f2_kernel(f);
    U.dim = static_cast<int>(U.basis.size());
    auto bs = sq_basis_signs(cg);
    for (auto& b : U.basis) {
        BitVec s(static_cast<size_t>(K.r1()));
        for (size_t i = 0; i < D; ++i)
            if (b.get(i)) s ^= bs[i];
        U.signs.push_back(s);
    }
    U.saturated = U.dim == K.r1() + K.r2();
    // Explicit small units spanning the space, when they exist.
    int n = K.degree();
    IntMatrix R = lll_reduce(IntMatrix::identity(static_cast<size_t>(n)), K.t2_gram());
    std::vector<BitVec> got;
    std::vector<Elt> elts;
    auto consider = [&](const std::vector<Int>& c) {
        if (std::all_of(c.begin(), c.end(), [](const Int& x) { return x == 0; })) return;
        Int N = K.norm_int(c);
        if (abs(N) != 1) return;
        Elt e = K.from_coeffs(c);
        BitVec v = sq_class(cg, e);
        if (f2_in_span(got, v)) return;
        got.push_back(v);
        elts.push_back(e);
    };
    consider(K.from_int(-1).c);
    Rng rng(5);
    for (int t = 0; t < 3000 && static_cast<int>(got.size()) < U.dim; ++t) {
        std::vector<Int> c(static_cast<size_t>(n), Int(0));
        for (int i = 0; i < n; ++i) {
            long co = t < n ? (i == t) : rng.range(-3, 3);
            for (int q = 0; q < n; ++q) c[q] += co * R(i, q);
        }
        consider(c);
    }
    if (static_cast<int>(got.size()) == U.dim) U.elements = elts;
    return U;
}

std::vector<Int> class_dlog(const ClassGroupData& cg, const FractionalIdeal& A, std::uint64_t seed) {
    const NumberField& K = *cg.K;
    size_t S = cg.fb.size();
    std::vector<Int> e(S, Int(0));
    FbIndex idx;
    for (size_t i = 0; i < S; ++i) idx.by_p[cg.fb[i].p.get_ui()].push_back(static_cast<int>(i));
    for (auto& [p, v] : idx.by_p) idx.primes.push_back(p);
    Rng rng(seed);
    int n = K.degree();
    for (auto& [P, v] : factor_ideal(K, A)) {
        int in_fb = -1;
        for (size_t i = 0; i < S; ++i)
            if (cg.fb[i].ideal == P.ideal) in_fb = static_cast<int>(i);
        if (in_fb >= 0) {
            e[in_fb] += v;
            continue;
        }
        // Find c in P*J with (c) = P * (S-part).
        bool found = false;
        for (int t = 0; t < 20000 && !found; ++t) {
            FractionalIdeal I = P.ideal;
            int k = static_cast<int>(rng.range(0, 2));
            for (int s = 0; s < k && S; ++s) I = ideal_mul(K, I, cg.fb[rng.below(S)].ideal);
            IntMatrix R = lll_reduce(I.H, K.t2_gram());
            Int NP = ideal_norm(P.ideal).get_num();
            for (int tr = 0; tr < 3 * n && !found; ++tr) {
                std::vector<Int> c(static_cast<size_t>(n), Int(0));
                for (int i = 0; i < n; ++i) {
                    long co = tr < n ? (i == tr) : rng.range(-2, 2);
                    for (int q = 0; q < n; ++q) c[q] += co * R(i, q);
                }
                if (std::all_of(c.begin(), c.end(), [](const Int& x) { return x == 0; })) continue;
                Int N = abs(K.norm_int(c));
                if (N % NP != 0) continue;
                std::vector<std::pair<std::uint64_t, int>> fac;
                if (!smooth_part(N / NP, idx, fac)) continue;
                std::vector<Int> row(S, Int(0));
                Int acc = 1;
                for (auto& [p, ex] : fac) {
                    (void)ex;
                    for (int i : idx.by_p.at(p)) {
                        row[i] = valuation_int(K, cg.fb[i], c.size() ? c : c);
                        Int q;
                        mpz_pow_ui(q.get_mpz_t(), Int(static_cast<unsigned long>(p)).get_mpz_t(),
                                   static_cast<unsigned long>(cg.fb[i].f) * row[i].get_ui());
                        acc *= q;
                    }
                }
                if (acc * NP != N) continue;
                for (size_t i = 0; i < S; ++i) e[i] -= v * row[i];
                found = true;
            }
        }
        if (!found) throw MathError("class_dlog: could not express prime " + P.label);
    }
    return class_coords(cg, e);
}

std::vector<Int> class_coords(const ClassGroupData& cg, const std::vector<Int>& e) {
    std::vector<Int> out;
    for (size_t t = 0; t < cg.invariants.size(); ++t) {
        size_t col = static_cast<size_t>(cg.invariant_index[t]);
        Int acc = 0;
        for (size_t i = 0; i < e.size(); ++i) acc += e[i] * cg.V(i, col);
        out.push_back(mod_floor(acc, cg.invariants[t]));
    }
    return out;
}

std::vector<CharPrime> degree_one_primes(const NumberField& K, std::uint64_t lower, std::size_t count,
                                         std::uint64_t seed) {
    Rng rng(seed);
    return find_char_primes(K, 2, lower, count, rng);
}

std::optional<BitVec> residue_bits(const std::vector<CharPrime>& Qs, const Elt& x) {
    BitVec b(Qs.size());
    for (size_t k = 0; k < Qs.size(); ++k) {
        std::uint64_t q = Qs[k].q;
        Int dq = mod_floor(x.den, Int(static_cast<unsigned long>(q)));
        if (dq == 0) return std::nullopt;
        std::uint64_t r = reduce_at(Qs[k].residue, x.c, q);
        if (r == 0) return std::nullopt;
        r = mulmod(r, invmod(dq.get_ui(), q), q);
        if (powmod_u(r, (q - 1) / 2, q) != 1) b.set(k);
    }
    return b;
}

FractionalIdeal class_generator(const ClassGroupData& cg, std::size_t i) {
    const NumberField& K = *cg.K;
    size_t row = static_cast<size_t>(cg.invariant_index.at(i));
    FractionalIdeal I = ideal_unit(K);
    for (size_t k = 0; k < cg.fb.size(); ++k) {
        Int c = mod_floor(cg.Vinv(row, k), cg.invariants[i]);
        if (c != 0) I = ideal_mul(K, I, ideal_pow(K, cg.fb[k].ideal, c.get_si()));
    }
    return I;
}

ModifiedClassGroup modified_class_group(const ClassGroupData& cg, const std::vector<BitVec>& X) {
    const NumberField& K = *cg.K;
    size_t S = cg.fb.size(), r1 = static_cast<size_t>(K.r1()), cols = S + r1;
    ModifiedClassGroup out;
    if (cols == 0) return out;
    IntMatrix M(0, cols);
    for (size_t j = 0; j < cg.gens.size(); ++j) {
        std::vector<Int> r(cols, Int(0));
        for (size_t k = 0; k < S; ++k) r[k] = cg.vals(j, k);
        for (size_t k = 0; k < r1; ++k) r[S + k] = cg.signs[j].get(k) ? 1 : 0;
        M.append_row(r);
    }
    for (size_t k = 0; k < r1; ++k) {
        std::vector<Int> r(cols, Int(0));
        r[S + k] = 2;
        M.append_row(r);
    }
    for (auto& x : X) {
        std::vector<Int> r(cols, Int(0));
        for (size_t k = 0; k < r1; ++k) r[S + k] = x.get(k) ? 1 : 0;
        M.append_row(r);
    }
    Int D = 1;
    for (size_t i = 0; i < S; ++i) D *= cg.lattice(i, i);
    D *= Int(1) << r1;
    IntMatrix H = hnf_basis(hnf_mod(M, D));
    auto snf = snf_with_transform(H);
    IntMatrix Vinv = inverse_unimodular(snf.V);
    for (size_t i = snf.divisors.size(); i-- > 0;) {
        if (snf.divisors[i] == 1) continue;
        out.invariants.push_back(snf.divisors[i]);
        if (snf.divisors[i] % 2 == 0) {
            ++out.two_rank;
            std::vector<Int> g = Vinv.row(i);
            Int half = snf.divisors[i] / 2;
            for (auto& x : g) x *= half;
            out.two_torsion.push_back(g);
        }
    }
    return out;
}

}  // namespace selmer
