#pragma once

#include <vector>

#include "selmer/numberfield.hpp"

namespace selmer {

// Fractional ideal: (row lattice H in integral-basis coordinates) / den, with H
// in canonical upper-triangular HNF and gcd(content(H), den) = 1.
struct FractionalIdeal {
    IntMatrix H;
    Int den = 1;

    bool is_integral() const { return den == 1; }
    bool operator==(const FractionalIdeal& o) const { return den == o.den && H == o.H; }
    bool operator!=(const FractionalIdeal& o) const { return !(*this == o); }
    std::string to_string() const;
};

struct PrimeIdeal {
    Int p;
    int e = 1;
    int f = 1;
    FractionalIdeal ideal;
    Elt gen;  // P = (p, gen) whenever two_element is true
    bool two_element = false;
    // Anti-uniformiser: tau in O with tau*P in pO and tau not in pO; drives valuations.
    std::vector<Int> tau;
    // For f = 1: integers r_i with omega_i = r_i mod P.
    std::vector<std::uint64_t> residue;
    std::string label;  // human-readable description
};

FractionalIdeal ideal_unit(const NumberField& K);
FractionalIdeal ideal_from_hnf(const NumberField& K, IntMatrix rows, Int den);
// O-module generated by the given elements (at least one nonzero).
FractionalIdeal ideal_generated(const NumberField& K, const std::vector<Elt>& gens);
FractionalIdeal principal_ideal(const NumberField& K, const Elt& a);
FractionalIdeal ideal_mul(const NumberField& K, const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal ideal_add(const NumberField& K, const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal ideal_inv(const NumberField& K, const FractionalIdeal& a);
FractionalIdeal ideal_pow(const NumberField& K, const FractionalIdeal& a, long e);
FractionalIdeal ideal_div(const NumberField& K, const FractionalIdeal& a, const FractionalIdeal& b);
Rat ideal_norm(const FractionalIdeal& a);
bool ideal_contains(const NumberField& K, const FractionalIdeal& a, const Elt& x);
// Smallest positive integer in an integral ideal.
Int ideal_min(const FractionalIdeal& a);
// Basis elements of the ideal as field elements.
std::vector<Elt> ideal_basis(const NumberField& K, const FractionalIdeal& a);

std::vector<PrimeIdeal> decompose_prime(const NumberField& K, const Int& p);
int valuation(const NumberField& K, const PrimeIdeal& P, const Elt& a);
int valuation_int(const NumberField& K, const PrimeIdeal& P, std::vector<Int> a);  // a integral, nonzero
int ideal_valuation(const NumberField& K, const PrimeIdeal& P, const FractionalIdeal& a);
// Factorisation of a nonzero fractional ideal into primes.
std::vector<std::pair<PrimeIdeal, int>> factor_ideal(const NumberField& K, const FractionalIdeal& a);
// Reduction mod a degree-one prime.
std::uint64_t reduce_mod_prime(const PrimeIdeal& P, const std::vector<Int>& a);

}  // namespace selmer
