// SPDX-License-Identifier: MIT
#pragma once

#include "dhnf/scalars.hpp"

#include <optional>
#include <vector>

namespace dhnf {

using RatVector = std::vector<Rational>;

/// Dense exact rational matrix, row-major.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
    const Rational& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

    RatVector row(int i) const;
    RatVector col(int j) const;
    RatMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;
    RatMatrix transpose() const;
    bool is_zero() const;

    friend RatVector operator*(const RatMatrix& a, const RatVector& x);
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> data_;
};

/// Rank via fraction-free (Bareiss) elimination on the row-scaled integer matrix.
int rank_bareiss(const RatMatrix& m);
/// Basis of {x : m x = 0}; one vector per free column, free entry set to 1.
std::vector<RatVector> nullspace(const RatMatrix& m);
/// Unique solution of a square system, or nullopt if singular.
std::optional<RatVector> solve_square(const RatMatrix& a, const RatVector& b);
std::optional<RatMatrix> inverse(const RatMatrix& a);

/// Span of inserted vectors kept in reduced form for cheap independence tests.
class IncrementalSpan {
public:
    explicit IncrementalSpan(int dim) : dim_(dim) {}
    /// Reduces v against the span; the remainder is zero iff v is in the span.
    RatVector reduce(RatVector v) const;
    bool contains(const RatVector& v) const;
    /// Inserts v if independent; returns whether it was inserted.
    bool insert(const RatVector& v);
    int size() const { return int(basis_.size()); }

private:
    int dim_;
    std::vector<RatVector> basis_;
    std::vector<int> pivots_;
};

/// Greedily takes rows of m in the given order, keeping those independent of
/// the rows already taken.
std::vector<int> select_independent_rows(const RatMatrix& m, const std::vector<int>& order);
std::vector<int> select_independent_cols(const RatMatrix& m, const std::vector<int>& order);

}  // namespace dhnf
