#pragma once
// Class groups, S-unit square classes and modified (sign-twisted) class groups.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "selmer/f2.hpp"
#include "selmer/ideal.hpp"

namespace selmer {

struct ClassGroupOptions {
    std::uint64_t seed = 1;
    double fb_bound = 0;           // factor-base norm bound; 0 picks one from the discriminant
    int extra_relations = 20;      // surplus relations beyond the factor-base size
    bool prove_generation = true;  // sweep every prime up to the Minkowski bound
    int max_rounds = 80;
};

// Degree-one prime (q, theta - r) used for power-residue characters.
struct CharPrime {
    std::uint64_t q = 0;
    std::vector<std::uint64_t> residue;  // omega_i mod Q
};

// Class group of a number field together with a group Gamma of S-units
// (S = factor base) that is certified saturated at 2 and at every prime
// dividing the class number.  Gamma / Gamma^2 carries exact coordinates.
struct ClassGroupData {
    FieldPtr K;
    std::vector<PrimeIdeal> fb;
    std::vector<Elt> gens;        // gens[0] generates the roots of unity; the rest are relations
    IntMatrix vals;               // gens x fb valuations
    std::vector<BitVec> signs;    // per generator: bit k set iff negative at real place k
    int torsion = 2;              // number of roots of unity
    IntMatrix lattice;            // HNF of the relation lattice in Z^S
    std::vector<Int> divisors;    // SNF diagonal of `lattice`, d1 | d2 | ...
    IntMatrix V, Vinv;            // class of e in Z^S has coordinates e*V mod divisors
    std::vector<Int> invariants;  // nontrivial divisors, largest first
    std::vector<int> invariant_index;  // position of each invariant in `divisors`

    std::vector<CharPrime> char_primes;  // quadratic characters giving coordinates on Gamma/Gamma^2
    std::vector<BitVec> chars;           // per generator
    std::vector<int> sq_basis;           // generators forming an F2 basis of Gamma/Gamma^2
    std::vector<BitVec> sq_coords;       // per generator, in terms of sq_basis

    bool certified = false;
    std::string trust;
    double minkowski = 0;
    double fb_bound = 0;
    long swept = 0;
    std::vector<Int> saturated_at;

    Int order() const;
    int two_rank() const;
    std::size_t sq_dim() const { return sq_basis.size(); }
};

ClassGroupData class_group(const FieldPtr& K, const ClassGroupOptions& opts = {});

// Discrete logarithm: coordinates of [A] w.r.t. `invariants`.
std::vector<Int> class_dlog(const ClassGroupData& cg, const FractionalIdeal& A, std::uint64_t seed = 7);
// Ideal (product of factor-base primes) generating the i-th invariant factor.
FractionalIdeal class_generator(const ClassGroupData& cg, std::size_t i);

// Square-class coordinates of an element whose support lies in the factor base.
BitVec sq_class(const ClassGroupData& cg, const Elt& x);
// Quadratic characters (one bit per char prime) of an S-element.
BitVec quadratic_characters(const ClassGroupData& cg, const Elt& x);

struct UnitData {
    int dim = 0;
    std::vector<BitVec> basis;   // square-class coordinates of a basis of O^x / (O^x)^2
    std::vector<BitVec> signs;   // their sign vectors
    std::vector<Elt> elements;   // explicit units (filled when small ones span)
    bool saturated = false;
};
UnitData units_mod_squares(const ClassGroupData& cg);

// Sign vectors and valuation parities of the square-class basis.
std::vector<BitVec> sq_basis_signs(const ClassGroupData& cg);

// Cl^X = ideals / principal ideals with signature in X, for X a subgroup of
// the sign space F_2^{r1} (bit = negative).  X = 0 gives the narrow group,
// X = everything the ordinary class group.
struct ModifiedClassGroup {
    std::vector<Int> invariants;  // nontrivial, largest first
    int two_rank = 0;
    Int order() const;
    // Generators of the 2-torsion, as vectors in Z^S (+) F_2^{r1}.
    std::vector<std::vector<Int>> two_torsion;
};
ModifiedClassGroup modified_class_group(const ClassGroupData& cg, const std::vector<BitVec>& X);

std::string format_invariants(const std::vector<Int>& inv);

// Coordinates in `cg.invariants` of the class of prod fb[k]^e[k].
std::vector<Int> class_coords(const ClassGroupData& cg, const std::vector<Int>& e);

// Degree-one primes of K, at most one above each rational prime q > lower.
std::vector<CharPrime> degree_one_primes(const NumberField& K, std::uint64_t lower, std::size_t count,
                                         std::uint64_t seed);
// Quadratic residue symbols of x at the given primes (bit set = non-residue);
// nullopt when x is not a unit at one of them.
std::optional<BitVec> residue_bits(const std::vector<CharPrime>& Qs, const Elt& x);

// Roots of unity of K: (order w, generator).
std::pair<int, Elt> roots_of_unity(const NumberField& K);

}  // namespace selmer
