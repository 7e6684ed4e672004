#include "selmer/matrix.hpp"

#include <cmath>
#include <sstream>

namespace selmer {

IntMatrix IntMatrix::identity(size_t n) {
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    size_t cols = rows.empty() ? 0 : rows[0].size();
    IntMatrix m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows, size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
}

std::vector<Int> IntMatrix::row(size_t i) const {
    return std::vector<Int>(a_.begin() + static_cast<long>(i * c_), a_.begin() + static_cast<long>((i + 1) * c_));
}

void IntMatrix::set_row(size_t i, const std::vector<Int>& v) {
    for (size_t j = 0; j < c_; ++j) (*this)(i, j) = v[j];
}

void IntMatrix::append_row(const std::vector<Int>& v) {
    if (r_ == 0 && c_ == 0) c_ = v.size();
    if (v.size() != c_) throw MathError("append_row: width mismatch");
    a_.insert(a_.end(), v.begin(), v.end());
    ++r_;
}

void IntMatrix::swap_rows(size_t i, size_t j) {
    if (i == j) return;
    for (size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::remove_rows_from(size_t k) {
    if (k >= r_) return;
    a_.resize(k * c_);
    r_ = k;
}

bool IntMatrix::row_is_zero(size_t i) const {
    for (size_t j = 0; j < c_; ++j)
        if ((*this)(i, j) != 0) return false;
    return true;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (c_ != o.r_) throw MathError("matrix product: dimension mismatch");
    IntMatrix m(r_, o.c_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t k = 0; k < c_; ++k) {
            const Int& x = (*this)(i, k);
            if (x == 0) continue;
            for (size_t j = 0; j < o.c_; ++j) m(i, j) += x * o(k, j);
        }
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix m(c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < r_; ++i) {
        os << (i ? "; " : "");
        for (size_t j = 0; j < c_; ++j) os << (j ? " " : "") << (*this)(i, j).get_str();
    }
    os << "]";
    return os.str();
}

namespace {

// row_i -= q * row_j, for all columns from `from`.
void row_submul(IntMatrix& a, size_t i, size_t j, const Int& q, size_t from = 0) {
    if (q == 0) return;
    for (size_t k = from; k < a.cols(); ++k) {
        if (a(j, k) != 0) a(i, k) -= q * a(j, k);
    }
}

void col_submul(IntMatrix& a, size_t i, size_t j, const Int& q) {  // col_i -= q col_j
    if (q == 0) return;
    for (size_t k = 0; k < a.rows(); ++k) {
        if (a(k, j) != 0) a(k, i) -= q * a(k, j);
    }
}

void swap_cols(IntMatrix& a, size_t i, size_t j) {
    if (i == j) return;
    for (size_t k = 0; k < a.rows(); ++k) std::swap(a(k, i), a(k, j));
}

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

HnfResult hnf_impl(const IntMatrix& m, bool track) {
    IntMatrix A = m;
    size_t R = A.rows(), C = A.cols();
    IntMatrix U = track ? IntMatrix::identity(R) : IntMatrix();
    size_t row = 0;
    std::vector<size_t> pivot_cols;
    for (size_t col = 0; col < C && row < R; ++col) {
        while (true) {
            size_t best = R;
            for (size_t i = row; i < R; ++i) {
                if (A(i, col) == 0) continue;
                if (best == R || abs(A(i, col)) < abs(A(best, col))) best = i;
            }
            if (best == R) break;
            A.swap_rows(row, best);
            if (track) U.swap_rows(row, best);
            bool clean = true;
            for (size_t i = row + 1; i < R; ++i) {
                if (A(i, col) == 0) continue;
                Int q = floor_div(A(i, col), A(row, col));
                row_submul(A, i, row, q, col);
                if (track) row_submul(U, i, row, q);
                if (A(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (A(row, col) == 0) continue;
        if (A(row, col) < 0) {
            for (size_t k = col; k < C; ++k) A(row, k) = -A(row, k);
            if (track)
                for (size_t k = 0; k < R; ++k) U(row, k) = -U(row, k);
        }
        for (size_t i = 0; i < row; ++i) {
            Int q = floor_div(A(i, col), A(row, col));
            row_submul(A, i, row, q, col);
            if (track) row_submul(U, i, row, q);
        }
        pivot_cols.push_back(col);
        ++row;
    }
    A.remove_rows_from(row);
    return {A, U};
}

}  // namespace

HnfResult hnf(const IntMatrix& m) { return hnf_impl(m, true); }

IntMatrix hnf_basis(const IntMatrix& m) { return hnf_impl(m, false).H; }

IntMatrix hnf_mod(const IntMatrix& m, const Int& D) {
    size_t n = m.cols();
    std::vector<std::vector<Int>> rows;
    for (size_t i = 0; i < m.rows(); ++i) {
        auto r = m.row(i);
        for (auto& x : r) x = mod_floor(x, D);
        rows.push_back(r);
    }
    IntMatrix H(n, n);
    for (size_t col = 0; col < n; ++col) {
        std::vector<Int> extra(n, Int(0));
        extra[col] = D;
        rows.push_back(extra);
        // Euclidean elimination on column `col`.
        while (true) {
            size_t best = rows.size();
            for (size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                if (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])) best = i;
            }
            bool clean = true;
            for (size_t i = 0; i < rows.size(); ++i) {
                if (i == best || rows[i][col] == 0) continue;
                Int q = floor_div(rows[i][col], rows[best][col]);
                for (size_t k = col; k < n; ++k) rows[i][k] -= q * rows[best][k];
                for (size_t k = col + 1; k < n; ++k) rows[i][k] = mod_floor(rows[i][k], D);
                if (rows[i][col] != 0) clean = false;
            }
            if (clean) {
                std::vector<Int> piv = rows[best];
                if (piv[col] < 0)
                    for (auto& x : piv) x = -x;
                for (size_t k = col + 1; k < n; ++k) piv[k] = mod_floor(piv[k], D);
                H.set_row(col, piv);
                rows.erase(rows.begin() + static_cast<long>(best));
                break;
            }
        }
        std::vector<std::vector<Int>> keep;
        for (auto& r : rows) {
            bool zero = true;
            for (size_t k = col + 1; k < n && zero; ++k) zero = (r[k] == 0);
            if (!zero) keep.push_back(std::move(r));
        }
        rows.swap(keep);
    }
    // Canonical reduction above pivots.
    for (size_t col = 0; col < n; ++col) {
        for (size_t i = 0; i < col; ++i) {
            Int q = floor_div(H(i, col), H(col, col));
            row_submul(H, i, col, q, col);
        }
    }
    return H;
}

SnfResult snf_with_transform(const IntMatrix& m) {
    IntMatrix A = m;
    size_t R = A.rows(), C = A.cols();
    IntMatrix U = IntMatrix::identity(R), V = IntMatrix::identity(C);
    size_t t = 0;
    for (; t < std::min(R, C); ++t) {
        // Smallest nonzero entry of the trailing block goes to (t, t).
        size_t bi = R, bj = C;
        for (size_t i = t; i < R; ++i)
            for (size_t j = t; j < C; ++j)
                if (A(i, j) != 0 && (bi == R || abs(A(i, j)) < abs(A(bi, bj)))) {
                    bi = i;
                    bj = j;
                }
        if (bi == R) break;
        A.swap_rows(t, bi);
        U.swap_rows(t, bi);
        swap_cols(A, t, bj);
        swap_cols(V, t, bj);
        while (true) {
            bool done = true;
            for (size_t i = t + 1; i < R; ++i) {
                if (A(i, t) == 0) continue;
                Int q = floor_div(A(i, t), A(t, t));
                row_submul(A, i, t, q);
                row_submul(U, i, t, q);
                if (A(i, t) != 0) done = false;
            }
            for (size_t j = t + 1; j < C; ++j) {
                if (A(t, j) == 0) continue;
                Int q = floor_div(A(t, j), A(t, t));
                col_submul(A, j, t, q);
                col_submul(V, j, t, q);
                if (A(t, j) != 0) done = false;
            }
            if (!done) {
                size_t bi2 = t, bj2 = t;
                for (size_t i = t + 1; i < R; ++i)
                    if (A(i, t) != 0 && abs(A(i, t)) < abs(A(bi2, bj2))) {
                        bi2 = i;
                        bj2 = t;
                    }
                for (size_t j = t + 1; j < C; ++j)
                    if (A(t, j) != 0 && abs(A(t, j)) < abs(A(bi2, bj2))) {
                        bi2 = t;
                        bj2 = j;
                    }
                A.swap_rows(t, bi2);
                U.swap_rows(t, bi2);
                swap_cols(A, t, bj2);
                swap_cols(V, t, bj2);
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            size_t bad = R;
            for (size_t i = t + 1; i < R && bad == R; ++i)
                for (size_t j = t + 1; j < C; ++j)
                    if (A(i, j) != 0 && !mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == R) break;
            row_submul(A, t, bad, Int(-1));
            row_submul(U, t, bad, Int(-1));
        }
        if (A(t, t) < 0) {
            for (size_t k = 0; k < C; ++k) A(t, k) = -A(t, k);
            for (size_t k = 0; k < R; ++k) U(t, k) = -U(t, k);
        }
    }
    SnfResult res;
    size_t k = std::min(R, C);
    for (size_t i = 0; i < k; ++i) res.divisors.push_back(A(i, i));
    res.U = U;
    res.V = V;
    return res;
}

std::vector<Int> snf(const IntMatrix& m) { return snf_with_transform(m).divisors; }

Int determinant(const IntMatrix& m0) {
    size_t n = m0.rows();
    if (n != m0.cols()) throw MathError("determinant of non-square matrix");
    if (n == 0) return 1;
    IntMatrix m = m0;
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            size_t s = k + 1;
            while (s < n && m(s, k) == 0) ++s;
            if (s == n) return 0;
            m.swap_rows(k, s);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

bool rat_inverse(const RatMatrix& m, RatMatrix& inv) {
    size_t n = m.size();
    RatMatrix a = m;
    inv.assign(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return false;
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Rat f = Rat(1) / a[c][c];
        for (size_t j = 0; j < n; ++j) {
            a[c][j] *= f;
            inv[c][j] *= f;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat g = a[i][c];
            for (size_t j = 0; j < n; ++j) {
                a[i][j] -= g * a[c][j];
                inv[i][j] -= g * inv[c][j];
            }
        }
    }
    return true;
}

std::vector<Rat> rat_solve_left(const RatMatrix& m, const std::vector<Rat>& b) {
    RatMatrix inv;
    if (!rat_inverse(m, inv)) throw MathError("rat_solve_left: singular matrix");
    size_t n = m.size();
    std::vector<Rat> x(n, Rat(0));
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) x[j] += b[i] * inv[i][j];
    return x;
}

Rat rat_determinant(RatMatrix a) {
    size_t n = a.size();
    Rat det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            Rat f = a[i][c] / a[c][c];
            for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
    size_t n = m.rows();
    RatMatrix a(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    RatMatrix inv;
    if (!rat_inverse(a, inv)) throw MathError("inverse_unimodular: singular");
    IntMatrix out(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (inv[i][j].get_den() != 1) throw MathError("inverse_unimodular: not unimodular");
            out(i, j) = inv[i][j].get_num();
        }
    return out;
}

IntMatrix lll_reduce(const IntMatrix& basis, const std::vector<std::vector<double>>& gram, double delta,
                     IntMatrix* transform) {
    IntMatrix B = basis;
    size_t n = B.rows(), d = B.cols();
    IntMatrix T = IntMatrix::identity(n);
    if (n <= 1) {
        if (transform) *transform = T;
        return B;
    }
    auto inner = [&](size_t i, size_t j) {
        std::vector<double> bi(d), bj(d);
        for (size_t k = 0; k < d; ++k) {
            bi[k] = B(i, k).get_d();
            bj[k] = B(j, k).get_d();
        }
        double s = 0;
        for (size_t a = 0; a < d; ++a) {
            if (bi[a] == 0) continue;
            double t = 0;
            for (size_t b = 0; b < d; ++b) t += gram[a][b] * bj[b];
            s += bi[a] * t;
        }
        return s;
    };
    std::vector<std::vector<double>> mu(n, std::vector<double>(n, 0.0));
    std::vector<double> Bn(n, 0.0);
    auto gso = [&]() {
        std::vector<std::vector<double>> G(n, std::vector<double>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j <= i; ++j) G[i][j] = G[j][i] = inner(i, j);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < i; ++j) {
                double s = G[i][j];
                for (size_t k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * Bn[k];
                mu[i][j] = Bn[j] > 0 ? s / Bn[j] : 0.0;
            }
            double s = G[i][i];
            for (size_t k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * Bn[k];
            Bn[i] = s;
        }
    };
    gso();
    size_t k = 1;
    size_t guard = 0;
    while (k < n && ++guard < 100000) {
        bool changed = false;
        for (size_t j = k; j-- > 0;) {
            if (std::fabs(mu[k][j]) > 0.51) {
                double q = std::nearbyint(mu[k][j]);
                Int qi(q);
                row_submul(B, k, j, qi);
                row_submul(T, k, j, qi);
                for (size_t l = 0; l <= j; ++l) mu[k][l] -= q * (l == j ? 1.0 : mu[j][l]);
                changed = true;
            }
        }
        if (changed) gso();
        if (Bn[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * Bn[k - 1]) {
            ++k;
        } else {
            B.swap_rows(k, k - 1);
            T.swap_rows(k, k - 1);
            gso();
            k = std::max<size_t>(k - 1, 1);
        }
    }
    if (transform) *transform = T;
    return B;
}

}  // namespace selmer
