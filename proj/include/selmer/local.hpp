#pragma once
// Local analysis at a finite prime v of K: completions K_v and L_v = K_v[x]/(F)
// through exact global representatives, Weierstrass models and reduction
// types, the niceness criteria, the local condition sets M_{1,v}, M_{2,v} and a
// brute-force Kummer image.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "selmer/relative.hpp"
#include "selmer/residue.hpp"

namespace selmer {

// The completion K_v, handled through elements of K: valuations are exact, and
// unit square classes are read off the residue ring O / P^{2e+1} (p = 2) or
// O / P (p odd), which determines them by Hensel's lemma.
class LocalField {
public:
    LocalField(FieldPtr K, PrimeIdeal P);

    const FieldPtr& field() const { return K_; }
    const PrimeIdeal& prime() const { return P_; }
    const Int& p() const { return P_.p; }
    int e() const { return P_.e; }
    int f() const { return P_.f; }
    int degree() const { return P_.e * P_.f; }  // [K_v : Q_p]
    bool even() const { return P_.p == 2; }
    const std::string& label() const { return P_.label; }

    int valuation(const Elt& a) const;  // +infinity is reported as INT_MAX
    // K_v^x / squares: bit 0 = valuation parity, then unit coordinates.
    std::size_t sq_dim() const { return 1 + units_->dim(); }
    BitVec sq_class(const Elt& a) const;
    bool is_square(const Elt& a) const { return sq_class(a).is_zero(); }
    const UnitSquareClasses& units() const { return *units_; }
    // Class of the unit generating the unramified quadratic extension.
    const BitVec& boxtimes() const { return boxtimes_; }
    // O / P with canonical representatives.
    const ResidueRing& residue_field() const { return *residue_; }
    Int residue_size() const { return residue_->size(); }

private:
    FieldPtr K_;
    PrimeIdeal P_;
    std::shared_ptr<UnitSquareClasses> units_;
    std::shared_ptr<ResidueRing> residue_;
    BitVec boxtimes_;
};

// Primes of K above the rational prime p.
std::vector<LocalField> local_fields(const FieldPtr& K, const Int& p);

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with a_i in O_K.
struct WeierstrassModel {
    std::array<Elt, 5> a;  // a1, a2, a3, a4, a6
    Elt b2, b4, b6, b8, c4, c6, disc;
};
WeierstrassModel make_model(const NumberField& K, const std::array<Elt, 5>& a);
// Integral cubic X^3 + b2 X^2 + 8 b4 X + 16 b6 (ascending coefficients):
// y^2 = G(X) is isomorphic to the model over K via X = 4x + b2/3 shifts.
std::array<Elt, 4> two_division_cubic(const NumberField& K, const WeierstrassModel& E);
// Discriminant of a monic cubic over K.
Elt cubic_discriminant(const NumberField& K, const std::array<Elt, 4>& F);

enum class Reduction { GoodOrdinary, GoodSupersingular, Good, SplitMultiplicative, NonsplitMultiplicative, Additive };
std::string reduction_name(Reduction r);
inline bool is_good(Reduction r) {
    return r == Reduction::GoodOrdinary || r == Reduction::GoodSupersingular || r == Reduction::Good;
}
inline bool is_multiplicative(Reduction r) {
    return r == Reduction::SplitMultiplicative || r == Reduction::NonsplitMultiplicative;
}

struct LocalCurve {
    WeierstrassModel model;  // minimal at v
    Reduction type = Reduction::Additive;
    int v_disc = 0;          // v(Delta^min)
    int v_c4 = 0;
    int model_steps = 0;     // number of u = pi rescalings used to reach minimality
    // [E(K_v) : E_0(K_v)] when known (not computed for additive reduction).
    std::optional<int> tamagawa;
};
// Minimal model and reduction type.  Good reduction at odd p is classified as
// ordinary/supersingular by counting points over the residue field when it has
// at most 2^22 elements; larger residue fields report Reduction::Good.
LocalCurve reduction_data(const LocalField& Kv, const WeierstrassModel& E);

// L_v^x / squares = prod_{w | v} L_w^x / squares with coordinates
// (valuation parity, unit class) per component, and the norm map to K_v.
struct LocalComponent {
    PrimeIdeal w;
    int e = 1, f = 1;  // over K_v
    std::shared_ptr<UnitSquareClasses> units;
    BitVec boxtimes;   // unit class of the unramified quadratic generator of L_w
    std::size_t offset = 0;
    std::size_t dim() const { return 1 + units->dim(); }
};

class LocalSquareSpace {
public:
    LocalSquareSpace(const RelativeField& R, const LocalField& Kv, std::uint64_t seed = 1);

    const LocalField& base() const { return Kv_; }
    const std::vector<LocalComponent>& components() const { return comps_; }
    std::size_t dim() const { return dim_; }
    // Components of degree one over K_v, i.e. roots of F in K_v.
    int roots_in_base() const;
    int two_torsion() const { return 1 + roots_in_base(); }

    BitVec classify(const Elt& a) const;  // a in L^x
    const F2Map& norm_map() const { return norm_; }
    std::vector<BitVec> norm_square() const;   // (L_v^x/2)_{N = square}
    std::vector<BitVec> unit_classes() const;  // even valuation at every w
    std::vector<BitVec> unramified() const;    // L_v(sqrt a)/L_v unramified
    // The vector with `unit` placed in component i (valuation bit clear).
    BitVec embed_unit(std::size_t i, const BitVec& unit) const;
    BitVec embed_valuation(std::size_t i) const;

    const RelativeField& relative() const { return R_; }

private:
    const RelativeField& R_;
    LocalField Kv_;
    std::vector<LocalComponent> comps_;
    std::size_t dim_ = 0;
    F2Map norm_;
};

struct LocalConditions {
    std::vector<BitVec> M1, M2;  // bases inside LocalSquareSpace coordinates
};
LocalConditions local_condition_sets(const LocalSquareSpace& S);
// The explicit descriptions of M_{1,v}: {1} for one component, the pair
// list for K_v x L_w, and the four-element list for K_v^3.
std::vector<BitVec> case_formula_M1(const LocalSquareSpace& S);
// Infinite places: signs (bit set = negative) of the images allowed at real
// place `place` of K, as vectors over the real places of L above it.
std::vector<BitVec> infinite_condition(const RelativeField& R, int place);

enum class Verdict { Nice, NotNice, Undetermined };
std::string verdict_name(Verdict v);
struct NicenessCertificate {
    Verdict verdict = Verdict::Undetermined;
    std::string criterion;  // short identifier of the criterion that fired
    std::string detail;
};
// Niceness of E at v.  `v_D` is the valuation of the discriminant of the
// integral cubic defining L, `two_torsion` = |E(K_v)[2]|.
NicenessCertificate niceness(const LocalField& Kv, const LocalCurve& C, int v_D, int two_torsion);

struct KummerOptions {
    std::uint64_t seed = 1;
    std::size_t budget = 1u << 16;  // candidate x-coordinates
};
struct KummerImage {
    std::vector<BitVec> basis;   // F_2-basis of im(delta)
    std::size_t target_dim = 0;  // log2 of d |E(K_v)[2]| at even v, |E(K_v)[2]| at odd v
    std::size_t points = 0;      // sampled points of E(K_v)
    std::size_t candidates = 0;
    std::vector<BitVec> samples;  // classes of the first few sampled points (for checks)
    std::vector<Elt> sample_x;
};
// Brute-force image of delta: E(K_v) -> L_v^x/squares, P -> x(P) - theta for
// the model y^2 = F(x), F = R.F.  Throws MathError if the span does not reach
// the target dimension within the budget.
KummerImage kummer_image_oracle(const LocalSquareSpace& S, const KummerOptions& opts = {});

// Subspace helpers.
bool f2_subspace(const std::vector<BitVec>& a, const std::vector<BitVec>& b);  // span a <= span b
bool f2_equal_spans(const std::vector<BitVec>& a, const std::vector<BitVec>& b);

}  // namespace selmer
