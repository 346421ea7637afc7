// SPDX-License-Identifier: MIT
#include "dhnf/linalg.hpp"

#include <numeric>
#include <stdexcept>

namespace dhnf {

RatVector RatMatrix::row(int i) const {
    return RatVector(data_.begin() + std::size_t(i) * cols_, data_.begin() + std::size_t(i + 1) * cols_);
}

RatVector RatMatrix::col(int j) const {
    RatVector c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

RatMatrix RatMatrix::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
    RatMatrix s(int(rows.size()), int(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s(int(i), int(j)) = (*this)(rows[i], cols[j]);
    return s;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool RatMatrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

RatVector operator*(const RatMatrix& a, const RatVector& x) {
    if (int(x.size()) != a.cols_) throw std::invalid_argument("dimension mismatch");
    RatVector y(a.rows_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < a.cols_; ++j)
            if (a(i, j) != 0 && x[j] != 0) y[i] += a(i, j) * x[j];
    return y;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("dimension mismatch");
    RatMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            if (a(i, k) == 0) continue;
            for (int j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

int rank_bareiss(const RatMatrix& m) {
    const int R = m.rows(), C = m.cols();
    std::vector<std::vector<mpz_class>> a(R, std::vector<mpz_class>(C));
    for (int i = 0; i < R; ++i) {
        mpz_class l = 1;
        for (int j = 0; j < C; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (int j = 0; j < C; ++j) a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    }
    mpz_class prev = 1;
    int rank = 0;
    for (int col = 0; col < C && rank < R; ++col) {
        int piv = -1;
        for (int i = rank; i < R; ++i)
            if (a[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[rank]);
        for (int i = rank + 1; i < R; ++i) {
            for (int j = col + 1; j < C; ++j) {
                a[i][j] = a[i][j] * a[rank][col] - a[i][col] * a[rank][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RatMatrix& a) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < a.rows(); ++i)
            if (a(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
        Rational inv = 1 / a(r, c);
        for (int j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) continue;
            Rational f = a(i, c);
            for (int j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::vector<RatVector> nullspace(const RatMatrix& m) {
    RatMatrix a = m;
    std::vector<int> pivots = rref(a);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<RatVector> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVector v(m.cols());
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(int(r), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RatVector> solve_square(const RatMatrix& a, const RatVector& b) {
    const int n = a.rows();
    if (a.cols() != n || int(b.size()) != n) throw std::invalid_argument("solve_square: shape mismatch");
    RatMatrix aug(n, n + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    std::vector<int> pivots = rref(aug);
    if (int(pivots.size()) < n || (n > 0 && pivots.back() >= n)) return std::nullopt;
    RatVector x(n);
    for (int i = 0; i < n; ++i) x[i] = aug(i, n);
    return x;
}

std::optional<RatMatrix> inverse(const RatMatrix& a) {
    const int n = a.rows();
    RatMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<int> pivots = rref(aug);
    if (int(pivots.size()) < n || (n > 0 && pivots[n - 1] >= n)) return std::nullopt;
    RatMatrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

RatVector IncrementalSpan::reduce(RatVector v) const {
    for (std::size_t b = 0; b < basis_.size(); ++b) {
        const Rational f = v[pivots_[b]];
        if (f == 0) continue;
        for (int j = 0; j < dim_; ++j)
            if (basis_[b][j] != 0) v[j] -= f * basis_[b][j];
    }
    return v;
}

bool IncrementalSpan::contains(const RatVector& v) const {
    RatVector r = reduce(v);
    for (const auto& x : r)
        if (x != 0) return false;
    return true;
}

bool IncrementalSpan::insert(const RatVector& v) {
    RatVector r = reduce(v);
    int p = -1;
    for (int j = 0; j < dim_; ++j)
        if (r[j] != 0) {
            p = j;
            break;
        }
    if (p < 0) return false;
    Rational inv = 1 / r[p];
    for (auto& x : r) x *= inv;
    basis_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
}

std::vector<int> select_independent_rows(const RatMatrix& m, const std::vector<int>& order) {
    IncrementalSpan span(m.cols());
    std::vector<int> chosen;
    for (int i : order)
        if (span.insert(m.row(i))) chosen.push_back(i);
    return chosen;
}

std::vector<int> select_independent_cols(const RatMatrix& m, const std::vector<int>& order) {
    IncrementalSpan span(m.rows());
    std::vector<int> chosen;
    for (int j : order)
        if (span.insert(m.col(j))) chosen.push_back(j);
    return chosen;
}

}  // namespace dhnf
