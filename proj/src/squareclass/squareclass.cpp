#include "selmer/squareclass.hpp"

#include <algorithm>
#include <sstream>

#include "selmer/residue.hpp"

namespace selmer {

namespace {

std::vector<BitVec> units_of(std::size_t n) {
    std::vector<BitVec> out;
    for (size_t i = 0; i < n; ++i) out.push_back(BitVec::unit(n, i));
    return out;
}

// {x in span(basis) : f(x) in span(target)}, returned in ambient coordinates.
std::vector<BitVec> restrict_preimage(const std::vector<BitVec>& basis, std::size_t ambient, const F2Map& f,
                                      const std::vector<BitVec>& target) {
    F2Map g(basis.size(), f.cod);
    for (size_t i = 0; i < basis.size(); ++i) g.images[i] = f.apply(basis[i]);
    std::vector<BitVec> out;
    for (auto& c : f2_preimage(g, target)) {
        BitVec x(ambient);
        for (size_t i = 0; i < basis.size(); ++i)
            if (c.get(i)) x ^= basis[i];
        out.push_back(x);
    }
    return f2_span_basis(out);
}

std::vector<BitVec> intersect(const std::vector<BitVec>& a, const std::vector<BitVec>& b, std::size_t n) {
    return f2_span_basis(f2_intersect(a, b, n));
}

bool subspace_of(const std::vector<BitVec>& a, const std::vector<BitVec>& b) {
    return std::all_of(a.begin(), a.end(), [&](const BitVec& x) { return f2_in_span(b, x); });
}

bool rat_sqrt(const Rat& q, Rat& root) {
    if (q < 0) return false;
    Int n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    root = make_rat(rn, rd);
    return true;
}

int log2_exact(const Int& x) {
    if (x <= 0) return -1;
    size_t b = mpz_sizeinbase(x.get_mpz_t(), 2) - 1;
    return (Int(1) << b) == x ? static_cast<int>(b) : -1;
}

int log2_count(std::size_t x) {
    int b = 0;
    while ((std::size_t{1} << b) < x) ++b;
    return (std::size_t{1} << b) == x ? b : -1;
}

// C_L[2] coordinates of a class given by coordinates in cg.invariants.
BitVec two_torsion_bits(const ClassGroupData& cg, const std::vector<Int>& coords) {
    std::vector<size_t> even;
    for (size_t t = 0; t < cg.invariants.size(); ++t)
        if (cg.invariants[t] % 2 == 0) even.push_back(t);
    BitVec out(even.size());
    for (size_t t = 0; t < cg.invariants.size(); ++t) {
        const Int& d = cg.invariants[t];
        if (coords[t] == 0) continue;
        if (d % 2 != 0 || coords[t] != d / 2) throw MathError("class is not 2-torsion");
        out.set(static_cast<size_t>(std::find(even.begin(), even.end(), t) - even.begin()));
    }
    return out;
}

std::vector<BitVec> sign_vectors_of_small_elements(const NumberField& K) {
    std::vector<BitVec> out;
    int n = K.degree();
    Rng rng(11);
    for (int t = 0; t < 64 + 8 * n; ++t) {
        std::vector<Int> c(static_cast<size_t>(n), Int(0));
        for (int i = 0; i < n; ++i) c[i] = rng.range(-6, 6);
        if (std::all_of(c.begin(), c.end(), [](const Int& z) { return z == 0; })) continue;
        auto s = K.signs(K.from_coeffs(c));
        BitVec b(s.size());
        for (size_t k = 0; k < s.size(); ++k)
            if (s[k] < 0) b.set(k);
        out.push_back(b);
    }
    return out;
}

}  // namespace

std::string star_name(Star s) {
    switch (s) {
        case Star::Plain: return "plain";
        case Star::Plus: return "plus";
        case Star::Zero: return "zero";
        case Star::Infty: return "infty";
    }
    return "?";
}

Star parse_star(const std::string& s) {
    if (s == "plain") return Star::Plain;
    if (s == "plus") return Star::Plus;
    if (s == "zero") return Star::Zero;
    if (s == "infty") return Star::Infty;
    throw MathError("unknown star '" + s + "' (expected plain, plus, zero or infty)");
}

std::string m_name(MName m) {
    switch (m) {
        case MName::M0: return "M0";
        case MName::M1: return "M1";
        case MName::M2: return "M2";
        case MName::Minf: return "Minf";
    }
    return "?";
}

SignSpace sign_space(const RelativeField& R) {
    SignSpace S;
    S.dim = static_cast<size_t>(R.L->r1());
    S.a = R.a;
    S.b = R.b;
    auto e = [&](int i) { return BitVec::unit(S.dim, static_cast<size_t>(i)); };
    for (auto& pl : R.places) {
        if (pl.ramified) {
            S.Vprime.push_back(e(pl.l_places[0]));
            continue;
        }
        int v1 = pl.l_places[0], v2 = pl.l_places[1], v3 = pl.l_places[2];
        S.V.push_back(e(v2) ^ e(v3));
        S.Vprime.push_back(e(v2) ^ e(v3));
        S.Vprime.push_back(e(v1));
        S.W.push_back(e(v1) ^ e(v2));
        S.W.push_back(e(v1) ^ e(v3));
    }
    return S;
}

std::vector<BitVec> SignSpace::allowed(Star s) const {
    switch (s) {
        case Star::Plain: return units_of(dim);
        case Star::Plus: return {};
        case Star::Zero: return Vprime;
        case Star::Infty: return V;
    }
    return {};
}

bool SignSpace::in_V(const BitVec& s) const { return f2_in_span(V, s); }

IndexChain index_chain_check(const RelativeField& R) {
    SignSpace S = sign_space(R);
    IndexChain c;
    c.a = R.a;
    c.b = R.b;
    int rV = static_cast<int>(f2_rank(S.V)), rVp = static_cast<int>(f2_rank(S.Vprime));
    if (!subspace_of(S.V, S.Vprime)) throw MathError("index chain: V is not contained in V'");
    // The sign map is onto, so P^star / P^+ is the subgroup of allowed signatures.
    c.log_P_P0 = static_cast<int>(S.dim) - rVp;
    c.log_P0_Pinf = rVp - rV;
    c.log_Pinf_Pplus = rV;
    return c;
}

ModifiedClassGroup modified_class_group(const ClassGroupData& cgL, const RelativeField& R, Star s) {
    return modified_class_group(cgL, sign_space(R).allowed(s));
}

bool is_square_in(const NumberField& K, const Elt& y) {
    if (y.is_zero()) return true;
    if (K.degree() == 1) {
        Rat r;
        return rat_sqrt(K.norm(y), r);
    }
    if (K.degree() != 2) throw MathError("is_square_in: only fields of degree at most 2 are supported");
    Rat N = K.norm(y), T = K.trace(y), n;
    if (!rat_sqrt(N, n)) return false;
    for (const Rat& s : {n, Rat(-n)}) {
        Rat t;
        Rat t2 = T + 2 * s;
        if (t2 == 0 || !rat_sqrt(t2, t)) continue;
        Elt z = K.scale(K.add(y, K.from_rat(s)), make_rat(t.get_den(), t.get_num()));
        if (K.mul(z, z) == y) return true;
    }
    // Trace-zero square roots: y rational and y * disc(K) a square.
    bool rational = true;
    for (size_t i = 1; i < y.c.size(); ++i)
        if (y.c[i] != 0) rational = false;
    if (rational) {
        Rat q = make_rat(y.c[0], y.den), r;
        if (rat_sqrt(q, r) || rat_sqrt(q * Rat(K.disc()), r)) return true;
    }
    return false;
}

std::vector<Elt> SquareClassSpace::gens() const {
    std::vector<Elt> out;
    for (int j : cgL.sq_basis) out.push_back(cgL.gens[static_cast<size_t>(j)]);
    return out;
}

Elt SquareClassSpace::element(const BitVec& x) const {
    const NumberField& L = *R.L;
    Elt e = L.one();
    for (size_t i = 0; i < gdim; ++i)
        if (x.get(i)) e = L.mul(e, cgL.gens[static_cast<size_t>(cgL.sq_basis[i])]);
    return e;
}

Elt SquareClassSpace::norm(const BitVec& x) const {
    const NumberField& K = *R.K;
    Elt e = K.one();
    for (size_t i = 0; i < gdim; ++i)
        if (x.get(i)) e = K.mul(e, relative_norm(R, cgL.gens[static_cast<size_t>(cgL.sq_basis[i])]));
    return e;
}

SquareClassSpace build_ambient(const FieldPtr& K, const std::array<Elt, 4>& F, const SquareClassOptions& opts) {
    SquareClassSpace S;
    S.R = absolutize(K, F);
    ClassGroupOptions co = opts.classgroup;
    co.seed = opts.seed;
    S.cgL = class_group(S.R.L, co);
    S.cgK = class_group(K, co);
    S.signs = sign_space(S.R);
    const NumberField& L = *S.R.L;
    const auto& cg = S.cgL;
    size_t D = cg.sq_dim(), nS = cg.fb.size();
    S.gdim = D;
    auto gens = S.gens();

    S.sign_map = F2Map(D, static_cast<size_t>(L.r1()));
    S.parity_map = F2Map(D, nS);
    for (size_t i = 0; i < D; ++i) {
        size_t j = static_cast<size_t>(cg.sq_basis[i]);
        S.sign_map.images[i] = cg.signs[j];
        for (size_t k = 0; k < nS; ++k)
            if (mpz_odd_p(cg.vals(j, k).get_mpz_t())) S.parity_map.images[i].set(k);
    }
    S.ambient = f2_span_basis(f2_kernel(S.parity_map));
    S.units = units_mod_squares(cg).basis;

    // Norm functional through residue symbols at primes of K, confirmed exactly.
    std::vector<Elt> norms;
    for (auto& g : gens) norms.push_back(relative_norm(S.R, g));
    std::uint64_t lower = static_cast<std::uint64_t>(std::max(cg.fb_bound, S.cgK.fb_bound)) + 1;
    size_t count = 3 * D + 40;
    bool verified = false;
    for (int attempt = 0; attempt < 6 && !verified; ++attempt, count *= 2) {
        auto Qs = degree_one_primes(*K, lower, count, opts.seed + 101 + static_cast<std::uint64_t>(attempt));
        S.norm_map = F2Map(D, Qs.size());
        bool usable = true;
        for (size_t i = 0; i < D && usable; ++i) {
            auto bits = residue_bits(Qs, norms[i]);
            if (!bits) usable = false;
            else S.norm_map.images[i] = *bits;
        }
        if (!usable) {
            lower *= 2;
            continue;
        }
        auto ker = f2_span_basis(f2_kernel(S.norm_map));
        verified = std::all_of(ker.begin(), ker.end(), [&](const BitVec& x) { return is_square_in(*K, S.norm(x)); });
        if (verified) S.norm_square = ker;
    }
    if (!verified) throw MathError("build_ambient: could not certify the norm-square subspace");

    // Unit classes modulo squares at every prime of L above 2.
    std::vector<BitVec> blocks(D);
    for (auto& P : decompose_prime(L, Int(2))) {
        UnitSquareClasses G(S.R.L, P, 2 * P.e);
        for (size_t i = 0; i < D; ++i) {
            if (gens[i].den != 1) throw MathError("build_ambient: non-integral generator");
            blocks[i] = blocks[i].concat(G.classify(unit_part(L, P, gens[i].c)));
        }
    }
    S.unram_map = F2Map(D, D ? blocks[0].size() : 0);
    for (size_t i = 0; i < D; ++i) S.unram_map.images[i] = blocks[i];
    return S;
}

std::vector<BitVec> compute_M(const SquareClassSpace& S, MName which) {
    size_t D = S.gdim;
    auto unram = restrict_preimage(S.ambient, D, S.unram_map, {});
    switch (which) {
        case MName::M0: return restrict_preimage(unram, D, S.sign_map, S.signs.Vprime);
        case MName::Minf: return restrict_preimage(unram, D, S.sign_map, S.signs.V);
        case MName::M1: {
            auto minf = restrict_preimage(unram, D, S.sign_map, S.signs.V);
            return intersect(minf, S.norm_square, D);
        }
        case MName::M2: {
            auto n2 = intersect(S.ambient, S.norm_square, D);
            return restrict_preimage(n2, D, S.sign_map, S.signs.V);
        }
    }
    return {};
}

std::string CardinalityReport::summary() const {
    std::ostringstream os;
    os << "dim ambient " << ambient_dim << "; log2 |M0|=" << M0 << " |Minf|=" << Minf << " |M1|=" << M1
       << " |M2|=" << M2 << "; 2-ranks C_L^inf=" << cinf2 << " C_L^0=" << c0_2 << " C_K^+=" << cplusK2
       << "; enumeration |M1|=" << M1_enum << " |M2|=" << M2_enum << "; " << (ok() ? "pass" : "FAIL");
    return os.str();
}

CardinalityReport verify_cardinality_theorem(const SquareClassSpace& S, bool enumerate) {
    CardinalityReport r;
    size_t D = S.gdim;
    r.ambient_dim = static_cast<int>(S.ambient.size());
    auto m0 = compute_M(S, MName::M0), m1 = compute_M(S, MName::M1), m2 = compute_M(S, MName::M2),
         minf = compute_M(S, MName::Minf);
    r.M0 = static_cast<int>(m0.size());
    r.M1 = static_cast<int>(m1.size());
    r.M2 = static_cast<int>(m2.size());
    r.Minf = static_cast<int>(minf.size());
    r.cinf2 = modified_class_group(S.cgL, S.R, Star::Infty).two_rank;
    r.c0_2 = modified_class_group(S.cgL, S.R, Star::Zero).two_rank;
    r.cplusK2 = modified_class_group(S.cgK, {}).two_rank;
    r.cK2 = S.cgK.two_rank();
    r.degK = S.R.K->degree();
    r.m0_ok = r.M0 == r.cinf2;
    r.minf_ok = r.Minf == r.c0_2;
    r.m1_ok = r.M1 == r.cinf2 - r.cplusK2;
    r.m2_ok = r.M2 == r.cinf2 - r.cplusK2 + r.degK;
    r.chain_ok = subspace_of(m1, m0) && subspace_of(m1, minf) && subspace_of(m1, m2) && subspace_of(minf, m0) &&
                 m1.size() == intersect(minf, S.norm_square, D).size();
    if (!enumerate) {
        r.M1_enum = r.M1;
        r.M2_enum = r.M2;
        r.enum_ok = true;
        return r;
    }
    if (S.ambient.size() > 18) throw MathError("verify_cardinality_theorem: ambient space too large to enumerate");
    // Exhaustive pass over the ambient space, testing each element directly.
    const NumberField& L = *S.R.L;
    auto primes2 = decompose_prime(L, Int(2));
    std::vector<UnitSquareClasses> G;
    for (auto& P : primes2) G.emplace_back(S.R.L, P, 2 * P.e);
    size_t n1 = 0, n2 = 0;
    f2_enumerate(S.ambient, D, [&](const BitVec& x) {
        if (!S.signs.in_V(S.sign_map.apply(x))) return;
        if (!is_square_in(*S.R.K, S.norm(x))) return;
        ++n2;
        Elt a = S.element(x);
        bool unram = true;
        for (size_t k = 0; k < primes2.size() && unram; ++k) {
            int v = valuation_int(L, primes2[k], a.c);
            if (v % 2 != 0) throw MathError("ambient element with odd valuation");
            unram = G[k].is_square(unit_part(L, primes2[k], a.c));
        }
        if (unram) ++n1;
    });
    r.M1_enum = log2_count(n1);
    r.M2_enum = log2_count(n2);
    r.enum_ok = r.M1_enum == r.M1 && r.M2_enum == r.M2;
    return r;
}

GammaPiReport gamma_pi_check(const SquareClassSpace& S) {
    GammaPiReport g;
    const auto& cg = S.cgL;
    size_t nS = cg.fb.size();
    auto m2 = compute_M(S, MName::M2);
    std::vector<BitVec> gam;
    for (auto& x : m2) {
        std::vector<Int> e(nS, Int(0));
        for (size_t i = 0; i < S.gdim; ++i)
            if (x.get(i))
                for (size_t k = 0; k < nS; ++k) e[k] += cg.vals(static_cast<size_t>(cg.sq_basis[i]), k);
        for (auto& v : e) {
            if (v % 2 != 0) throw MathError("gamma: odd valuation in M2");
            v /= 2;
        }
        gam.push_back(two_torsion_bits(cg, class_coords(cg, e)));
    }
    int rank_gamma = static_cast<int>(f2_rank(gam));
    g.ker_gamma = static_cast<int>(m2.size()) - rank_gamma;

    auto cinf = modified_class_group(cg, S.R, Star::Infty);
    std::vector<BitVec> pim;
    for (auto& t : cinf.two_torsion) {
        std::vector<Int> e(t.begin(), t.begin() + static_cast<long>(nS));
        pim.push_back(two_torsion_bits(cg, class_coords(cg, e)));
    }
    int rank_pi = static_cast<int>(f2_rank(pim));
    g.ker_pi = cinf.two_rank - rank_pi;
    if (!subspace_of(gam, pim)) throw MathError("gamma/pi: im(gamma) is not inside im(pi)");

    // Closed forms.
    auto unitsL = units_mod_squares(cg);
    auto unitsK = units_mod_squares(S.cgK);
    std::vector<BitVec> unit_signs_V = unitsL.signs;
    for (auto& v : S.signs.V) unit_signs_V.push_back(v);
    int r_uV = static_cast<int>(f2_rank(unit_signs_V));
    int units_norm = static_cast<int>(intersect(S.units, S.norm_square, S.gdim).size());
    int sgnUK = static_cast<int>(f2_rank(unitsK.signs));
    g.ker_gamma_formula = units_norm + static_cast<int>(f2_rank(S.signs.V)) + sgnUK - r_uV;
    g.ker_pi_formula = static_cast<int>(S.signs.dim) - r_uV;
    g.im_ratio = rank_pi - rank_gamma;
    Int hK = S.cgK.order(), hKp = modified_class_group(S.cgK, {}).order();
    int cplus2 = modified_class_group(S.cgK, {}).two_rank;
    g.im_ratio_formula = cplus2 - log2_exact(hKp / hK);
    return g;
}

BasicQuantities basic_quantities(const SquareClassSpace& S) {
    BasicQuantities q;
    const NumberField& K = *S.R.K;
    const NumberField& L = *S.R.L;
    q.a = S.R.a;
    q.b = S.R.b;
    q.c = S.R.c;
    q.degK = K.degree();
    q.item1 = q.degK == q.a + q.b + 2 * q.c && static_cast<int>(f2_rank(S.signs.V)) == q.b;
    q.sgnK = static_cast<int>(f2_rank(sign_vectors_of_small_elements(K)));
    q.sgnL = static_cast<int>(f2_rank(sign_vectors_of_small_elements(L)));
    q.item2 = q.sgnK == q.a + q.b && q.sgnL == q.a + 3 * q.b;
    auto UK = units_mod_squares(S.cgK);
    q.sgnUK = static_cast<int>(f2_rank(UK.signs));
    q.orderCK = S.cgK.order();
    q.orderCKplus = modified_class_group(S.cgK, {}).order();
    int ratio = q.orderCKplus % q.orderCK == 0 ? log2_exact(q.orderCKplus / q.orderCK) : -1;
    q.item3 = ratio >= 0 && q.sgnUK == q.a + q.b - ratio;
    q.unitsK = UK.dim;
    q.unitsL = static_cast<int>(S.units.size());
    q.item4 = q.unitsK == q.a + q.b + q.c && q.unitsL == 2 * q.a + 3 * q.b + 3 * q.c;
    q.unitsL_norm = static_cast<int>(intersect(S.units, S.norm_square, S.gdim).size());
    q.item5 = q.unitsL_norm == q.a + 2 * q.b + 2 * q.c;
    return q;
}

}  // namespace selmer
