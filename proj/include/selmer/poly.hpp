#pragma once
// Dense univariate polynomials over Q, plus word-size arithmetic over F_p.

#include "selmer/arith.hpp"

#include <string>
#include <vector>

namespace selmer {

// Polynomial with rational coefficients stored lowest degree first.
// The coefficient vector never carries trailing zeros, so the zero
// polynomial is the empty vector and degree() == -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rat> ascending);
    Poly(std::initializer_list<long> ascending);
    static Poly from_descending(const std::vector<Int>& coeffs);
    static Poly monomial(const Rat& c, int k);
    static Poly constant(const Rat& c) { return monomial(c, 0); }
    static Poly x() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Rat coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rat(0); }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat lead() const { return c_.empty() ? Rat(0) : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    bool is_integral() const;
    std::vector<Int> int_coeffs() const;  // requires is_integral()

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& s) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Rat eval(const Rat& x) const;
    Poly derivative() const;
    Poly compose(const Poly& inner) const;
    Poly monic() const;
    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rat> c_;
};

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly operator%(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);  // exact quotient part
Poly gcd(const Poly& a, const Poly& b);          // monic, gcd(0,0) = 0
Rat resultant(const Poly& a, const Poly& b);
Rat discriminant(const Poly& f);
// Discriminant of a monic cubic via Res(F, F'); rejects anything else.
Rat cubic_discriminant(const Poly& f);
bool is_squarefree(const Poly& f);

// ---------------------------------------------------------------------------
// Polynomials over F_p with p < 2^63, coefficients lowest degree first.
namespace modp {

using Vec = std::vector<std::uint64_t>;

void trim(Vec& a);
Vec reduce(const Poly& f, std::uint64_t p);  // f must have p-integral coefficients
Vec add(const Vec& a, const Vec& b, std::uint64_t p);
Vec sub(const Vec& a, const Vec& b, std::uint64_t p);
Vec mul(const Vec& a, const Vec& b, std::uint64_t p);
Vec scale(const Vec& a, std::uint64_t s, std::uint64_t p);
void divmod(const Vec& a, const Vec& b, std::uint64_t p, Vec& q, Vec& r);
Vec rem(const Vec& a, const Vec& b, std::uint64_t p);
Vec gcd(Vec a, Vec b, std::uint64_t p);  // monic
Vec make_monic(const Vec& a, std::uint64_t p);
Vec derivative(const Vec& a, std::uint64_t p);
Vec powmod(Vec base, Int e, const Vec& f, std::uint64_t p);
std::uint64_t eval(const Vec& a, std::uint64_t x, std::uint64_t p);
Poly lift(const Vec& a);  // coefficients in [0, p)

struct Factor {
    Vec poly;  // monic irreducible
    int multiplicity;
};

// Complete factorization into monic irreducibles (distinct-degree then
// equal-degree splitting).  The leading coefficient is dropped.
std::vector<Factor> factor(const Vec& f, std::uint64_t p, Rng& rng);
// Distinct roots in [0, p), ascending.
std::vector<std::uint64_t> roots(const Vec& f, std::uint64_t p, Rng& rng);

}  // namespace modp

std::vector<modp::Factor> factor_mod_p(const Poly& f, std::uint64_t p, Rng& rng);

// Factorization of a primitive integer polynomial over Z (Zassenhaus with
// Hensel lifting).  Returns irreducible factors with positive leading
// coefficient, times the sign/content as a separate constant.
struct IntFactorization {
    Int unit;
    std::vector<std::pair<Poly, int>> factors;
};
IntFactorization factor_over_Z(const Poly& f, Rng& rng);
// Returns a nontrivial factor if f (integral, squarefree) is reducible over Q.
bool find_rational_factor(const Poly& f, Rng& rng, Poly& witness);

}  // namespace selmer
