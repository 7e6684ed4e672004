#pragma once
// Linear algebra over F_2 with packed bit vectors.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace selmer {

class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
    static BitVec from_string(const std::string& bits);  // "1011" -> bit0 = 1
    static BitVec unit(std::size_t n, std::size_t i);

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v = true) {
        if (v) w_[i >> 6] |= (std::uint64_t{1} << (i & 63));
        else w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void flip(std::size_t i) { w_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }
    bool is_zero() const;
    std::size_t popcount() const;
    std::size_t lowest_set() const;  // size() if zero
    BitVec& operator^=(const BitVec& o);
    BitVec operator^(const BitVec& o) const {
        BitVec r = *this;
        r ^= o;
        return r;
    }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }
    bool operator<(const BitVec& o) const { return w_ < o.w_; }
    BitVec concat(const BitVec& o) const;
    BitVec slice(std::size_t from, std::size_t len) const;
    std::string to_string() const;
    const std::vector<std::uint64_t>& words() const { return w_; }
    std::size_t hash() const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct BitVecHash {
    std::size_t operator()(const BitVec& v) const { return v.hash(); }
};

// Linear map F_2^dom -> F_2^cod stored as the images of the standard basis.
struct F2Map {
    std::size_t dom = 0;
    std::size_t cod = 0;
    std::vector<BitVec> images;

    F2Map() = default;
    F2Map(std::size_t d, std::size_t c) : dom(d), cod(c), images(d, BitVec(c)) {}
    BitVec apply(const BitVec& x) const;
    F2Map compose_after(const F2Map& first) const;  // this o first
};

// A finite F_2-vector space with labelled basis vectors and named maps.
struct F2Space {
    std::size_t dimension = 0;
    std::vector<std::string> labels;
    std::vector<std::pair<std::string, F2Map>> maps;
};

std::size_t f2_rank(std::vector<BitVec> rows);
// Reduced row-echelon basis of the span.
std::vector<BitVec> f2_span_basis(const std::vector<BitVec>& rows);
std::vector<BitVec> f2_kernel(const F2Map& f);
std::vector<BitVec> f2_image(const F2Map& f);
// Coefficients c with sum c_i rows_i = v, if v lies in the span.
std::optional<BitVec> f2_solve(const std::vector<BitVec>& rows, const BitVec& v);
bool f2_in_span(const std::vector<BitVec>& rows, const BitVec& v);
std::vector<BitVec> f2_intersect(const std::vector<BitVec>& a, const std::vector<BitVec>& b, std::size_t ambient);
// {x : f(x) in span(target)}.
std::vector<BitVec> f2_preimage(const F2Map& f, const std::vector<BitVec>& target);
// Enumerate every element of span(basis) (2^k vectors, k = basis size).
void f2_enumerate(const std::vector<BitVec>& basis, std::size_t ambient, const std::function<void(const BitVec&)>& fn);

// Rank of a dense matrix over F_p (p < 2^15), rows of residues in [0, p).
std::size_t fp_rank(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p);

}  // namespace selmer
