#include "selmer/f2.hpp"

#include "selmer/arith.hpp"
#include "selmer/simd.hpp"

namespace selmer {

BitVec BitVec::from_string(const std::string& bits) {
    BitVec v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] == '1') v.set(i);
    return v;
}

BitVec BitVec::unit(std::size_t n, std::size_t i) {
    BitVec v(n);
    v.set(i);
    return v;
}

bool BitVec::is_zero() const {
    for (auto w : w_)
        if (w) return false;
    return true;
}

std::size_t BitVec::popcount() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
}

std::size_t BitVec::lowest_set() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i]) return i * 64 + static_cast<std::size_t>(__builtin_ctzll(w_[i]));
    return n_;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (o.n_ != n_) throw MathError("BitVec xor: length mismatch");
    simd::xor_rows(w_.data(), o.w_.data(), w_.size());
    return *this;
}

BitVec BitVec::concat(const BitVec& o) const {
    BitVec r(n_ + o.n_);
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) r.set(i);
    for (std::size_t i = 0; i < o.n_; ++i)
        if (o.get(i)) r.set(n_ + i);
    return r;
}

BitVec BitVec::slice(std::size_t from, std::size_t len) const {
    BitVec r(len);
    for (std::size_t i = 0; i < len; ++i)
        if (get(from + i)) r.set(i);
    return r;
}

std::string BitVec::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

std::size_t BitVec::hash() const {
    std::size_t h = n_ * 0x9e3779b97f4a7c15ull;
    for (auto w : w_) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
    return h;
}

BitVec F2Map::apply(const BitVec& x) const {
    BitVec r(cod);
    for (std::size_t i = 0; i < dom; ++i)
        if (x.get(i)) r ^= images[i];
    return r;
}

F2Map F2Map::compose_after(const F2Map& first) const {
    F2Map r(first.dom, cod);
    for (std::size_t i = 0; i < first.dom; ++i) r.images[i] = apply(first.images[i]);
    return r;
}

namespace {

// In-place Gaussian elimination on the first `width` bits; returns pivot rows
// first.  Rows that become zero on those bits are moved to the end.
std::size_t eliminate(std::vector<BitVec>& rows, std::size_t width, bool reduced) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && !rows[piv].get(col)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t i = reduced ? 0 : rank + 1; i < rows.size(); ++i)
            if (i != rank && rows[i].get(col)) rows[i] ^= rows[rank];
        ++rank;
    }
    return rank;
}

}  // namespace

std::size_t f2_rank(std::vector<BitVec> rows) {
    if (rows.empty()) return 0;
    return eliminate(rows, rows[0].size(), false);
}

std::vector<BitVec> f2_span_basis(const std::vector<BitVec>& rows0) {
    if (rows0.empty()) return {};
    std::vector<BitVec> rows = rows0;
    std::size_t r = eliminate(rows, rows[0].size(), true);
    rows.resize(r);
    return rows;
}

std::vector<BitVec> f2_kernel(const F2Map& f) {
    std::vector<BitVec> aug;
    for (std::size_t i = 0; i < f.dom; ++i) aug.push_back(f.images[i].concat(BitVec::unit(f.dom, i)));
    std::size_t r = eliminate(aug, f.cod, false);
    std::vector<BitVec> ker;
    for (std::size_t i = r; i < aug.size(); ++i) ker.push_back(aug[i].slice(f.cod, f.dom));
    return f2_span_basis(ker);
}

std::vector<BitVec> f2_image(const F2Map& f) { return f2_span_basis(f.images); }

std::optional<BitVec> f2_solve(const std::vector<BitVec>& rows, const BitVec& v) {
    std::size_t k = rows.size(), n = v.size();
    std::vector<BitVec> aug;
    for (std::size_t i = 0; i < k; ++i) aug.push_back(rows[i].concat(BitVec::unit(k, i)));
    std::size_t r = eliminate(aug, n, true);
    BitVec rem = v, coeff(k);
    for (std::size_t i = 0; i < r; ++i) {
        std::size_t lead = aug[i].lowest_set();
        if (lead < n && rem.get(lead)) {
            rem ^= aug[i].slice(0, n);
            coeff ^= aug[i].slice(n, k);
        }
    }
    if (!rem.is_zero()) return std::nullopt;
    return coeff;
}

bool f2_in_span(const std::vector<BitVec>& rows, const BitVec& v) { return f2_solve(rows, v).has_value(); }

std::vector<BitVec> f2_intersect(const std::vector<BitVec>& a, const std::vector<BitVec>& b, std::size_t ambient) {
    F2Map f(a.size() + b.size(), ambient);
    for (std::size_t i = 0; i < a.size(); ++i) f.images[i] = a[i];
    for (std::size_t j = 0; j < b.size(); ++j) f.images[a.size() + j] = b[j];
    std::vector<BitVec> out;
    for (auto& k : f2_kernel(f)) {
        BitVec v(ambient);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (k.get(i)) v ^= a[i];
        out.push_back(v);
    }
    return f2_span_basis(out);
}

std::vector<BitVec> f2_preimage(const F2Map& f, const std::vector<BitVec>& target) {
    F2Map g(f.dom + target.size(), f.cod);
    for (std::size_t i = 0; i < f.dom; ++i) g.images[i] = f.images[i];
    for (std::size_t j = 0; j < target.size(); ++j) g.images[f.dom + j] = target[j];
    std::vector<BitVec> out;
    for (auto& k : f2_kernel(g)) out.push_back(k.slice(0, f.dom));
    return f2_span_basis(out);
}

void f2_enumerate(const std::vector<BitVec>& basis, std::size_t ambient, const std::function<void(const BitVec&)>& fn) {
    std::size_t k = basis.size();
    if (k > 30) throw MathError("f2_enumerate: space too large");
    BitVec cur(ambient);
    fn(cur);
    // Gray-code walk: one xor per element.
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
        cur ^= basis[static_cast<std::size_t>(__builtin_ctzll(i))];
        fn(cur);
    }
}

std::size_t fp_rank(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p) {
    if (rows.empty()) return 0;
    std::size_t width = rows[0].size(), rank = 0;
    for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        std::uint32_t inv = static_cast<std::uint32_t>(invmod(rows[rank][col], p));
        for (auto& x : rows[rank]) x = static_cast<std::uint32_t>((static_cast<std::uint64_t>(x) * inv) % p);
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            std::uint32_t f = rows[i][col];
            if (!f) continue;
            simd::axpy_mod(rows[i].data(), rows[rank].data(), p - f, p, width);
        }
        ++rank;
    }
    return rank;
}

}  // namespace selmer
