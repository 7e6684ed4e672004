#include "selmer/residue.hpp"

#include <algorithm>

namespace selmer {

ResidueRing::ResidueRing(const FieldPtr& K, const FractionalIdeal& I) : K_(K), H_(I.H) {
    if (!I.is_integral()) throw MathError("ResidueRing: ideal is not integral");
    size_t n = static_cast<size_t>(K->degree());
    size_ = 1;
    for (size_t i = 0; i < n; ++i) {
        radix_.push_back(size_);
        size_ *= H_(i, i);
    }
}

std::vector<Int> ResidueRing::reduce(std::vector<Int> a) const {
    size_t n = a.size();
    for (size_t i = 0; i < n; ++i) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a[i].get_mpz_t(), H_(i, i).get_mpz_t());
        if (q != 0)
            for (size_t j = i; j < n; ++j) a[j] -= q * H_(i, j);
    }
    return a;
}

bool ResidueRing::is_zero(const std::vector<Int>& a) const {
    auto r = reduce(a);
    return std::all_of(r.begin(), r.end(), [](const Int& z) { return z == 0; });
}

std::vector<Int> ResidueRing::mul(const std::vector<Int>& a, const std::vector<Int>& b) const {
    return reduce(K_->mul_int(a, b));
}

std::vector<Int> ResidueRing::pow(std::vector<Int> a, Int e) const {
    std::vector<Int> r(a.size(), Int(0));
    r[0] = 1;
    r = reduce(r);
    a = reduce(a);
    while (e > 0) {
        if (e % 2 == 1) r = mul(r, a);
        e /= 2;
        if (e > 0) a = mul(a, a);
    }
    return r;
}

std::size_t ResidueRing::index(const std::vector<Int>& a) const {
    auto r = reduce(a);
    size_t idx = 0;
    for (size_t i = 0; i < r.size(); ++i) idx += Int(r[i] * radix_[i]).get_ui();
    return idx;
}

std::vector<Int> ResidueRing::element(std::size_t idx) const {
    size_t n = radix_.size();
    std::vector<Int> x(n);
    for (size_t i = 0; i < n; ++i) {
        unsigned long m = H_(i, i).get_ui();
        x[i] = static_cast<unsigned long>(idx % m);
        idx /= m;
    }
    return x;
}

UnitSquareClasses::UnitSquareClasses(const FieldPtr& K, const PrimeIdeal& P, int k)
    : K_(K), P_(P), ring_(K, ideal_pow(*K, P.ideal, P.p == 2 ? k : 1)) {
    const NumberField& F = *K;
    if (P.p != 2) {
        // Units modulo squares are detected by the quadratic residue symbol mod P.
        Int q = ring_.size();
        units_ = q - 1;
        for (int i = 1; i < k; ++i) units_ *= q;
        euler_exp_ = (q - 1) / 2;
        dim_ = 1;
        return;
    }
    if (ring_.size() > Int(static_cast<unsigned long>(kMaxResidueRing)))
        throw MathError("residue ring O/P^" + std::to_string(k) + " has " + ring_.size().get_str() +
                        " elements, above the enumeration cap");
    size_t N = ring_.size().get_ui();

    // Enumerate units and their squares.
    std::vector<std::vector<Int>> elems;
    std::vector<size_t> unit_idx;
    for (size_t idx = 0; idx < N; ++idx) {
        auto x = ring_.element(idx);
        bool zero = std::all_of(x.begin(), x.end(), [](const Int& z) { return z == 0; });
        if (zero || ideal_contains(F, P.ideal, F.from_coeffs(x))) continue;
        unit_idx.push_back(idx);
        elems.push_back(x);
    }
    units_ = static_cast<unsigned long>(unit_idx.size());
    std::unordered_map<size_t, size_t> pos;  // residue index -> position in elems
    for (size_t i = 0; i < unit_idx.size(); ++i) pos[unit_idx[i]] = i;

    // Squares form the subgroup with zero coordinates.
    std::vector<size_t> subgroup;
    for (auto& e : elems) {
        size_t s = ring_.index(F.mul_int(e, e));
        if (!coords_.count(s)) {
            coords_.emplace(s, BitVec());
            subgroup.push_back(s);
        }
    }
    // Greedy basis of the quotient; each new generator doubles the subgroup.
    std::vector<size_t> gens;
    for (size_t g : unit_idx) {
        if (coords_.count(g)) continue;
        size_t bit = gens.size();
        gens.push_back(g);
        const auto& ge = elems[pos.at(g)];
        std::vector<size_t> added;
        for (size_t h : subgroup) {
            size_t prod = ring_.index(F.mul_int(ge, elems[pos.at(h)]));
            BitVec c = coords_.at(h);
            if (c.size() <= bit) {
                BitVec w(bit + 1);
                for (size_t t = 0; t < c.size(); ++t) w.set(t, c.get(t));
                c = w;
            }
            c.set(bit);
            coords_.emplace(prod, c);
            added.push_back(prod);
        }
        subgroup.insert(subgroup.end(), added.begin(), added.end());
    }
    dim_ = gens.size();
    for (auto& [idx, c] : coords_) {
        BitVec w(dim_);
        for (size_t t = 0; t < c.size(); ++t) w.set(t, c.get(t));
        c = w;
    }
    if (coords_.size() != unit_idx.size()) throw MathError("UnitSquareClasses: coset enumeration incomplete");
}

BitVec UnitSquareClasses::classify(const std::vector<Int>& a) const {
    if (P_.p != 2) {
        auto r = ring_.pow(a, euler_exp_);
        if (ring_.is_zero(r)) throw MathError("UnitSquareClasses: element is not a unit at the prime");
        BitVec c(1);
        r[0] -= 1;
        if (!ring_.is_zero(r)) c.set(0);
        return c;
    }
    auto it = coords_.find(ring_.index(a));
    if (it == coords_.end()) throw MathError("UnitSquareClasses: element is not a unit at the prime");
    return it->second;
}

std::vector<Int> divide_by_uniformizer(const NumberField& K, const PrimeIdeal& P, std::vector<Int> g, int i) {
    for (int j = 0; j < i; ++j) {
        g = K.mul_int(g, P.tau);
        for (auto& c : g) {
            if (c % P.p != 0) throw MathError("divide_by_uniformizer: element is not divisible by the prime");
            c /= P.p;
        }
    }
    return g;
}

std::vector<Int> unit_part(const NumberField& K, const PrimeIdeal& P, const std::vector<Int>& g) {
    return divide_by_uniformizer(K, P, g, valuation_int(K, P, g));
}

bool unramified_at(const FieldPtr& K, const PrimeIdeal& P, const std::vector<Int>& alpha) {
    if (P.p != 2) return true;
    UnitSquareClasses G(K, P, 2 * P.e);
    return G.is_square(alpha);
}

}  // namespace selmer
