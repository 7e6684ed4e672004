#include "selmer/arith.hpp"

#include <algorithm>
#include <map>

namespace selmer {

Int Rng::big_below(const Int& n) {
    if (n <= 0) return 0;
    size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2) + 64;
    Int acc = 0;
    for (size_t got = 0; got < bits; got += 64) {
        acc <<= 64;
        std::uint64_t w = next();
        Int word;
        mpz_import(word.get_mpz_t(), 1, 1, sizeof(w), 0, 0, &w);
        acc += word;
    }
    return mod_floor(acc, n);
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These witnesses are deterministic for all 64-bit inputs.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Int next_prime(const Int& n) {
    Int r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return out;
}

namespace {

// Pollard-Brent rho; returns a nontrivial factor of the odd composite n.
Int rho_factor(const Int& n, std::uint64_t c0) {
    for (std::uint64_t c = c0;; ++c) {
        Int y = 2, x, g = 1, q = 1, ys;
        std::uint64_t r = 1, m = 128;
        auto f = [&](const Int& v) { return mod_floor(v * v + c, n); };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mod_floor(q * abs(x - y), n);
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                Int d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_rec(const Int& n, std::map<Int, int>& acc) {
    if (n == 1) return;
    if (is_prime(n)) {
        acc[n] += 1;
        return;
    }
    Int root;
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned k = 2; k < 64; ++k) {
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k)) {
                std::map<Int, int> sub;
                factor_rec(root, sub);
                for (auto& [p, e] : sub) acc[p] += e * static_cast<int>(k);
                return;
            }
        }
    }
    Int d = rho_factor(n, 1);
    factor_rec(d, acc);
    factor_rec(n / d, acc);
}

}  // namespace

Factorization factor_integer(const Int& n0) {
    if (n0 == 0) throw MathError("factor_integer: zero has no factorization");
    Int n = abs(n0);
    std::map<Int, int> acc;
    static const std::vector<std::uint64_t> small = primes_up_to(10000);
    for (std::uint64_t p : small) {
        if (n == 1) break;
        if (Int(p) * Int(p) > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            n /= p;
            acc[Int(p)] += 1;
        }
    }
    factor_rec(n, acc);
    return Factorization(acc.begin(), acc.end());
}

int valuation(const Int& n, const Int& p) {
    if (n == 0) throw MathError("valuation of zero");
    Int m = n;
    int v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        m /= p;
        ++v;
    }
    return v;
}

int valuation(const Rat& x, const Int& p) {
    if (x == 0) throw MathError("valuation of zero");
    return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

bool is_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()); }

bool is_square(const Rat& x) { return is_square(x.get_num()) && is_square(x.get_den()); }

Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
    while (nr) {
        std::int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1) throw MathError("invmod: not invertible");
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

std::uint64_t mod_of(const Int& a, std::uint64_t m) {
    return mpz_fdiv_ui(a.get_mpz_t(), m);
}

Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool sqrt_mod(std::uint64_t a, std::uint64_t p, std::uint64_t& root) {
    a %= p;
    if (a == 0) {
        root = 0;
        return true;
    }
    if (p == 2) {
        root = a;
        return true;
    }
    if (powmod(a, (p - 1) / 2, p) != 1) return false;
    // Tonelli-Shanks.
    std::uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t c = powmod(z, q, p), x = powmod(a, (q + 1) / 2, p), t = powmod(a, q, p);
    int m = s;
    while (t != 1) {
        int i = 0;
        std::uint64_t tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        std::uint64_t b = c;
        for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
        x = mulmod(x, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        m = i;
    }
    root = x;
    return true;
}

std::string to_string(const Int& n) { return n.get_str(); }
std::string to_string(const Rat& x) { return x.get_str(); }

}  // namespace selmer
