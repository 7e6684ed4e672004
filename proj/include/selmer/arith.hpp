#pragma once
// Integer and rational helpers shared by every module: primality, factoring,
// word-size modular arithmetic and a seeded random source.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace selmer {

using Int = mpz_class;
using Rat = mpq_class;

// Reduced fraction num/den (the two-argument mpq_class constructor does not canonicalize).
inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Deterministic randomness source; every randomized routine takes one of these
// explicitly so that runs are reproducible from a single seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 1) : eng_(seed) {}
    std::uint64_t next() { return eng_(); }
    std::uint64_t below(std::uint64_t n) { return n ? eng_() % n : 0; }
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    Int big_below(const Int& n);
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

using Factorization = std::vector<std::pair<Int, int>>;

bool is_prime(const Int& n);
bool is_prime_u64(std::uint64_t n);
Int next_prime(const Int& n);
// Full factorization of |n| (n != 0) into primes with multiplicity, ascending.
Factorization factor_integer(const Int& n);
// Primes up to bound (inclusive) by a simple sieve.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

int valuation(const Int& n, const Int& p);     // v_p(n), n != 0
int valuation(const Rat& x, const Int& p);     // v_p(x), x != 0
bool is_square(const Int& n);
bool is_square(const Rat& x);
Int isqrt(const Int& n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);
std::uint64_t mod_of(const Int& a, std::uint64_t m);  // canonical residue in [0, m)
Int mod_floor(const Int& a, const Int& m);           // canonical residue in [0, m)
// Square root modulo an odd prime; returns false if a is a non-residue.
bool sqrt_mod(std::uint64_t a, std::uint64_t p, std::uint64_t& root);

std::string to_string(const Int& n);
std::string to_string(const Rat& x);

}  // namespace selmer
