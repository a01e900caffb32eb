#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lieweight/ratfunc.hpp"

namespace lieweight {

/// Dense row-major matrix over an exact field.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

/// Solution set of A x = b: x = particular + span(nullspace).
struct LinearSolution {
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> nullspace;
  std::vector<std::size_t> pivot_columns;
};

/// Exact sparse Gauss-Jordan elimination over Q.
///
/// Rows are added one at a time and reduced against the pivots found so far;
/// solve() finishes the reduced row echelon form. The RREF is unique, so the
/// pivot columns and the returned basis do not depend on row order. Free
/// variables are set to zero in the particular solution; nullspace vector k
/// has a 1 in the k-th free column.
class SparseLinearSystem {
 public:
  explicit SparseLinearSystem(std::size_t cols) : cols_(cols) {}

  std::size_t cols() const { return cols_; }
  /// Entries must have distinct column indices < cols(); order is free.
  void add_row(SparseRow row, const Rational& rhs);
  bool consistent() const { return consistent_; }
  std::size_t rank() const { return pivots_.size(); }

  /// nullopt when the system is infeasible.
  std::optional<LinearSolution> solve(bool want_nullspace = true);

 private:
  struct PivotRow {
    SparseRow entries;  // sorted by column, leading entry == 1
    Rational rhs;
  };

  std::size_t cols_;
  bool consistent_ = true;
  std::vector<std::pair<std::size_t, PivotRow>> pivots_;  // sorted by pivot column
  PivotRow* find_pivot(std::size_t col);
};

std::optional<LinearSolution> linear_solve_exact(const Matrix<Rational>& a, std::span<const Rational> b);

/// Rank by fraction-based Gaussian elimination; works for Rational and
/// RatFunc entries (the latter is the generic rank over Q(x)).
template <class T>
std::size_t rank(Matrix<T> m) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t piv = r;
    while (piv < m.rows() && is_zero(m(piv, col))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (is_zero(m(i, col))) continue;
      const T factor = m(i, col) / m(r, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
    }
    ++r;
  }
  return r;
}

/// Inverse of a square matrix, or nullopt if singular.
template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m, const T& zero, const T& one) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix<T> a = m;
  Matrix<T> inv(n, n, zero);
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = one;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(a(piv, col))) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const T p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || is_zero(a(i, col))) continue;
      const T factor = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= factor * a(col, j);
        inv(i, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

/// Rank of the span of a list of rational vectors of equal length.
std::size_t span_rank(std::span<const std::vector<Rational>> vectors, std::size_t dim);

/// Whether v lies in the span of the given vectors.
bool in_span(std::span<const std::vector<Rational>> vectors, std::span<const Rational> v);

}  // namespace lieweight
