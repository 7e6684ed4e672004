#pragma once

#include <array>
#include <vector>

#include "selmer/numberfield.hpp"

namespace selmer {

// Real place v of K and the real places of L above it.
struct KPlaceInfo {
    bool ramified = false;  // F has a single real root under v
    // Ramified: {index of the unique real place above v}.
    // Unramified: real places of L above v ordered by gamma_1 < gamma_2 < gamma_3.
    std::vector<int> l_places;
};

// L = K[x]/(F) for a monic cubic F over K, kept both as an absolute field and
// as a 3-dimensional K-algebra with basis {1, x, x^2}.
struct RelativeField {
    FieldPtr K;
    FieldPtr L;
    std::array<Elt, 4> F;  // ascending coefficients over K, F[3] = 1
    int shift = 0;         // absolute generator theta = x + shift * (generator of K)
    Elt x_in_L, g_in_L;    // images of x and of K's generator
    std::vector<KPlaceInfo> places;  // one per real place of K
    std::vector<int> l_place_owner;  // real place of L -> real place of K
    int a = 0, b = 0, c = 0;         // ramified real, unramified real, complex places of K
    // Change of basis between Q-coordinates {g^i x^j} (index i + n*j) and powers of theta.
    RatMatrix rel_to_theta, theta_to_rel;
};

// Throws MathError if F is not a monic cubic or is reducible over K.
RelativeField absolutize(const FieldPtr& K, const std::array<Elt, 4>& F);

Elt embed_base(const RelativeField& R, const Elt& a);                  // K -> L
std::array<Elt, 3> to_relative(const RelativeField& R, const Elt& a);  // L -> K^3 (coefficients of 1, x, x^2)
Elt from_relative(const RelativeField& R, const std::array<Elt, 3>& c);
Elt relative_norm(const RelativeField& R, const Elt& a);
// Multiplication inside K[x]/(F) on relative coordinates.
std::array<Elt, 3> relative_mul(const RelativeField& R, const std::array<Elt, 3>& a, const std::array<Elt, 3>& b);

}  // namespace selmer
