#pragma once
// Sign structure of L = K[x]/(F), the modified class groups C_L^star and the
// square-class spaces M0, M1, M2, Minf inside L^x / (L^x)^2.

#include <string>
#include <vector>

#include "selmer/classgroup.hpp"
#include "selmer/relative.hpp"

namespace selmer {

enum class Star { Plain, Plus, Zero, Infty };
std::string star_name(Star s);
Star parse_star(const std::string& s);

// Sign space F_2^{r1(L)} (bit k set = negative at real place k of L) with the
// subgroups Vt, Vt' and Wt, stored by bases.
struct SignSpace {
    std::size_t dim = 0;  // a + 3b
    int a = 0, b = 0;
    std::vector<BitVec> V, Vprime, W;
    // Allowed signatures X for P^star: Plain = everything, Plus = {0}, Zero = Vt', Infty = Vt.
    std::vector<BitVec> allowed(Star s) const;
    bool in_V(const BitVec& s) const;
};
SignSpace sign_space(const RelativeField& R);

struct IndexChain {
    int log_P_P0 = 0, log_P0_Pinf = 0, log_Pinf_Pplus = 0;  // computed, as powers of 2
    int b = 0, a = 0;
    bool ok() const { return log_P_P0 == b && log_P0_Pinf == a + b && log_Pinf_Pplus == b; }
};
IndexChain index_chain_check(const RelativeField& R);

ModifiedClassGroup modified_class_group(const ClassGroupData& cgL, const RelativeField& R, Star s);

struct SquareClassOptions {
    std::uint64_t seed = 1;
    ClassGroupOptions classgroup;
};

// Gamma / Gamma^2 for the S-unit group of L with the linear functionals the
// local and sign conditions are built from.  All subspaces are bases of vectors in
// sq_basis coordinates (dimension gdim).
struct SquareClassSpace {
    RelativeField R;
    ClassGroupData cgL, cgK;
    SignSpace signs;
    std::size_t gdim = 0;
    F2Map sign_map;         // -> F_2^{r1(L)}
    F2Map parity_map;       // -> valuation parities over the factor base of L
    F2Map norm_map;         // -> residue symbols of the norm at primes of K
    F2Map unram_map;        // -> unit classes mod squares at every prime above 2
    std::vector<BitVec> ambient;  // {alpha : (alpha) = I^2}
    std::vector<BitVec> units;    // O_L^x / squares
    std::vector<BitVec> norm_square;  // {alpha : N(alpha) in (K^x)^2}, exactly verified
    std::vector<Elt> gens() const;  // sq_basis generators
    Elt element(const BitVec& x) const;  // representative prod of generators
    Elt norm(const BitVec& x) const;     // N_{L/K} of the representative
};
SquareClassSpace build_ambient(const FieldPtr& K, const std::array<Elt, 4>& F, const SquareClassOptions& opts = {});

enum class MName { M0, M1, M2, Minf };
std::string m_name(MName m);
std::vector<BitVec> compute_M(const SquareClassSpace& S, MName which);

// Exact square test in K (degree <= 2).
bool is_square_in(const NumberField& K, const Elt& y);

struct CardinalityReport {
    int ambient_dim = 0;
    int M0 = 0, M1 = 0, M2 = 0, Minf = 0;           // log2 sizes, from kernels
    int M1_enum = 0, M2_enum = 0;                   // log2 sizes, from exhaustive enumeration
    int cinf2 = 0, c0_2 = 0, cplusK2 = 0, cK2 = 0;  // 2-ranks
    int degK = 0;
    // |M1| = |C^inf[2]| / |C_K^+[2]|, |M2| = |M1| * 2^{[K:Q]}, |M0| = |C^inf[2]|, |Minf| = |C^0[2]|
    bool m0_ok = false, minf_ok = false, m1_ok = false, m2_ok = false, chain_ok = false, enum_ok = false;
    bool ok() const { return m0_ok && minf_ok && m1_ok && m2_ok && chain_ok && enum_ok; }
    std::string summary() const;
};
CardinalityReport verify_cardinality_theorem(const SquareClassSpace& S, bool enumerate = true);

// gamma : M2 -> C_L[2] and pi : C_L^inf[2] -> C_L[2], kernels computed directly
// and through their closed forms.
struct GammaPiReport {
    int ker_gamma = 0, ker_gamma_formula = 0;
    int ker_pi = 0, ker_pi_formula = 0;
    int im_ratio = 0, im_ratio_formula = 0;  // log2 |im pi| / |im gamma|
    bool ok() const {
        return ker_gamma == ker_gamma_formula && ker_pi == ker_pi_formula && im_ratio == im_ratio_formula;
    }
};
GammaPiReport gamma_pi_check(const SquareClassSpace& S);

// Identities among unit, sign and class-group sizes for K and L.
struct BasicQuantities {
    int a = 0, b = 0, c = 0, degK = 0;
    int sgnK = 0, sgnL = 0;          // log2 |sgn(K^x)|, |sgn(L^x)|
    int sgnUK = 0;                   // log2 |sgn(O_K^x)|
    int hK = 0, hKplus = 0;          // log2 of the 2-part ratio |C_K^+| / |C_K| via orders
    Int orderCK, orderCKplus;
    int unitsK = 0, unitsL = 0, unitsL_norm = 0;  // F_2-dimensions
    bool item1 = false, item2 = false, item3 = false, item4 = false, item5 = false;
    bool ok() const { return item1 && item2 && item3 && item4 && item5; }
};
BasicQuantities basic_quantities(const SquareClassSpace& S);

}  // namespace selmer
