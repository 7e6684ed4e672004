#pragma once
// Finite residue rings O / P^k and their unit groups modulo squares.

#include <unordered_map>
#include <vector>

#include "selmer/f2.hpp"
#include "selmer/ideal.hpp"

namespace selmer {

// O / I for an integral ideal I, with canonical representatives taken from
// the HNF box 0 <= x_i < H(i, i).
class ResidueRing {
public:
    ResidueRing(const FieldPtr& K, const FractionalIdeal& I);

    const Int& size() const { return size_; }
    std::vector<Int> reduce(std::vector<Int> a) const;
    bool is_zero(const std::vector<Int>& a) const;
    std::vector<Int> mul(const std::vector<Int>& a, const std::vector<Int>& b) const;
    std::vector<Int> pow(std::vector<Int> a, Int e) const;
    // Mixed-radix index of a reduced representative and its inverse.
    std::size_t index(const std::vector<Int>& a) const;
    std::vector<Int> element(std::size_t idx) const;

private:
    FieldPtr K_;
    IntMatrix H_;
    std::vector<Int> radix_;
    Int size_;
};

// (O / P^k)^x / squares.  For odd p the class of a unit is its quadratic
// residue symbol; for p = 2 the residue ring is enumerated and must have at
// most `kMaxResidueRing` elements.
class UnitSquareClasses {
public:
    static constexpr std::size_t kMaxResidueRing = 1u << 18;

    UnitSquareClasses(const FieldPtr& K, const PrimeIdeal& P, int k);

    std::size_t dim() const { return dim_; }
    const Int& unit_count() const { return units_; }
    // Class of an integral element that is a unit at P.
    BitVec classify(const std::vector<Int>& a) const;
    bool is_square(const std::vector<Int>& a) const { return classify(a).is_zero(); }

private:
    FieldPtr K_;
    PrimeIdeal P_;
    ResidueRing ring_;
    std::size_t dim_ = 0;
    Int units_;
    Int euler_exp_;                                    // (q - 1) / 2 for odd p
    std::unordered_map<std::size_t, BitVec> coords_;  // p = 2: unit residue index -> class
};

// g * (tau / p)^{v_P(g)}: integral, a unit at P, and in the same square class
// as g whenever v_P(g) is even.
std::vector<Int> unit_part(const NumberField& K, const PrimeIdeal& P, const std::vector<Int>& g);

// g * (tau / p)^i for integral g with v_P(g) >= i: division by a local
// uniformiser that keeps the result integral everywhere.
std::vector<Int> divide_by_uniformizer(const NumberField& K, const PrimeIdeal& P, std::vector<Int> g, int i);

// H(sqrt(alpha)) / H is unramified for H the completion at P, alpha a
// P-unit: always for odd P, and for P above 2 iff alpha is a square mod 4.
bool unramified_at(const FieldPtr& K, const PrimeIdeal& P, const std::vector<Int>& alpha);

}  // namespace selmer
