#pragma once
// Dense integer and rational matrices, Hermite and Smith normal forms,
// and LLL reduction with respect to a positive definite quadratic form.

#include "selmer/arith.hpp"

#include <string>
#include <vector>

namespace selmer {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols, Int(0)) {}
    static IntMatrix identity(size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows, size_t cols);

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    Int& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const Int& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }
    std::vector<Int> row(size_t i) const;
    void set_row(size_t i, const std::vector<Int>& v);
    void append_row(const std::vector<Int>& v);
    void swap_rows(size_t i, size_t j);
    void remove_rows_from(size_t k);  // keep rows [0, k)
    bool row_is_zero(size_t i) const;

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix transpose() const;
    bool operator==(const IntMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }
    std::string to_string() const;

private:
    size_t r_ = 0, c_ = 0;
    std::vector<Int> a_;
};

struct HnfResult {
    IntMatrix H;  // rank x cols, canonical row-style HNF
    IntMatrix U;  // rows x rows unimodular; first rank rows of U*m equal H, the rest are zero
};

// Canonical row Hermite normal form: pivots strictly move right, are
// positive, and entries above each pivot lie in [0, pivot).  Zero rows are
// dropped from H; the corresponding rows of U span the left kernel.
HnfResult hnf(const IntMatrix& m);
IntMatrix hnf_basis(const IntMatrix& m);  // H only, without tracking U
// HNF of a full-rank lattice known to contain D * Z^n (computed mod D).
IntMatrix hnf_mod(const IntMatrix& m, const Int& D);

struct SnfResult {
    std::vector<Int> divisors;  // d1 | d2 | ...; length min(rows, cols); zeros last
    IntMatrix U;                // rows x rows unimodular
    IntMatrix V;                // cols x cols unimodular, U*m*V = diag(divisors)
};
std::vector<Int> snf(const IntMatrix& m);
SnfResult snf_with_transform(const IntMatrix& m);

Int determinant(const IntMatrix& m);  // Bareiss, square input
IntMatrix inverse_unimodular(const IntMatrix& m);

// Rational square matrix helpers (Gauss-Jordan with exact rationals).
using RatMatrix = std::vector<std::vector<Rat>>;
bool rat_inverse(const RatMatrix& m, RatMatrix& inv);
std::vector<Rat> rat_solve_left(const RatMatrix& m, const std::vector<Rat>& b);  // x*m = b
Rat rat_determinant(RatMatrix m);

// LLL on the rows of `basis` with inner product given by the symmetric
// positive definite Gram matrix `gram` (in the ambient coordinates).
// Returns the reduced basis; `transform` receives T with reduced = T*basis.
IntMatrix lll_reduce(const IntMatrix& basis, const std::vector<std::vector<double>>& gram, double delta = 0.99,
                     IntMatrix* transform = nullptr);

}  // namespace selmer
