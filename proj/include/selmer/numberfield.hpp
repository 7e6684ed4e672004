#pragma once
// Absolute number fields with a certified maximal order and real embeddings.

#include "selmer/matrix.hpp"
#include "selmer/poly.hpp"
#include "selmer/realroots.hpp"

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace selmer {

class ReducibleError : public MathError {
public:
    ReducibleError(const std::string& what, Poly witness) : MathError(what), witness_(std::move(witness)) {}
    const Poly& witness() const { return witness_; }

private:
    Poly witness_;
};

// Field element (sum_i c_i omega_i) / den in the integral basis omega.
struct Elt {
    std::vector<Int> c;
    Int den = 1;

    bool is_zero() const;
    bool is_integral() const { return den == 1; }
    bool operator==(const Elt& o) const { return den == o.den && c == o.c; }
    bool operator!=(const Elt& o) const { return !(*this == o); }
    void normalize();
};

class NumberField {
public:
    // Builds Q[x]/(g) for g monic, integral and irreducible; throws
    // ReducibleError carrying a factor when g splits over Q.
    static std::shared_ptr<const NumberField> build(const Poly& g);

    const Poly& poly() const { return poly_; }
    int degree() const { return n_; }
    // omega_i = sum_j basis_num(i, j) theta^j / basis_den, with omega_0 = 1.
    const IntMatrix& basis_num() const { return basis_num_; }
    const Int& basis_den() const { return basis_den_; }
    const Int& disc() const { return disc_; }
    const Int& poly_disc() const { return poly_disc_; }
    const Int& index() const { return index_; }
    int r1() const { return r1_; }
    int r2() const { return r2_; }
    // Real roots in decreasing order; real place k is theta -> root k.
    const std::vector<RatInterval>& real_roots() const { return real_roots_; }
    // One representative (positive imaginary part) per complex place.
    const std::vector<std::complex<double>>& complex_roots() const { return complex_roots_; }
    double minkowski_bound() const;

    // Elements.
    Elt zero() const;
    Elt one() const;
    Elt from_int(const Int& v) const;
    Elt from_rat(const Rat& v) const;
    Elt basis(int i) const;
    Elt gen() const;  // theta
    Elt from_poly(const Poly& p) const;
    Elt from_coeffs(std::vector<Int> c) const;
    Poly to_poly(const Elt& a) const;

    Elt add(const Elt& a, const Elt& b) const;
    Elt sub(const Elt& a, const Elt& b) const;
    Elt neg(const Elt& a) const;
    Elt mul(const Elt& a, const Elt& b) const;
    Elt scale(const Elt& a, const Rat& s) const;
    Elt inv(const Elt& a) const;
    Elt pow(const Elt& a, long e) const;
    // Integral-coordinate product (no normalisation), hot path for ideals.
    std::vector<Int> mul_int(const std::vector<Int>& a, const std::vector<Int>& b) const;

    // Row i holds the coordinates of omega_i * a (a integral).
    IntMatrix mult_matrix(const std::vector<Int>& a) const;
    Rat norm(const Elt& a) const;
    Int norm_int(const std::vector<Int>& a) const;
    Rat trace(const Elt& a) const;
    Poly char_poly(const Elt& a) const;

    // Certified sign of a at real place k, and at all real places.
    int sign(const Elt& a, int place) const;
    std::vector<int> signs(const Elt& a) const;
    // Floating-point embeddings: r1 real values then r2 complex values.
    std::vector<std::complex<double>> embeddings(const Elt& a) const;
    // Gram matrix of the integral basis for T2(x) = sum |sigma(x)|^2.
    const std::vector<std::vector<double>>& t2_gram() const { return t2_gram_; }
    // Integral-basis coordinates of theta^j (row j), as rationals.
    const RatMatrix& power_to_basis() const { return power_to_basis_; }
    // Structure constants: omega_i * omega_j = sum_k table(i,j)[k] omega_k.
    const std::vector<Int>& table(int i, int j) const { return table_[static_cast<size_t>(i * n_ + j)]; }

    std::string describe() const;

private:
    NumberField() = default;
    void finish_basis();
    void compute_embeddings();

    Poly poly_;
    int n_ = 0;
    IntMatrix basis_num_;
    Int basis_den_ = 1;
    RatMatrix power_to_basis_;
    std::vector<std::vector<Int>> table_;
    Int disc_, poly_disc_, index_ = 1;
    int r1_ = 0, r2_ = 0;
    std::vector<RatInterval> real_roots_;
    std::vector<Poly> basis_polys_;
    std::vector<std::complex<double>> complex_roots_;
    std::vector<std::vector<std::complex<double>>> omega_embed_;  // [place][i]
    std::vector<std::vector<double>> t2_gram_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

// Kernel of the F_p-linear map given by `rows` (x -> sum x_i rows_i), p < 2^63.
std::vector<std::vector<std::uint64_t>> fp_left_kernel(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p);

}  // namespace selmer
