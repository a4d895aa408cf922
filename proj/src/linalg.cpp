#include "msym/linalg.hpp"

namespace msym {

namespace {

/// Reduces m (and the optional polynomial right-hand sides) to reduced row
/// echelon form; returns the pivot column of each pivot row.
std::vector<int> rref(RationalMatrix& m, std::vector<Scalar>* rhs) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t piv = row;
    while (piv < rows && is_zero(m[piv][col])) ++piv;
    if (piv == rows) continue;
    std::swap(m[row], m[piv]);
    if (rhs) std::swap((*rhs)[row], (*rhs)[piv]);
    Rational inv = 1 / m[row][col];
    for (std::size_t j = col; j < cols; ++j) m[row][j] *= inv;
    if (rhs) (*rhs)[row] = inv * (*rhs)[row];
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || is_zero(m[i][col])) continue;
      Rational factor = m[i][col];
      for (std::size_t j = col; j < cols; ++j) m[i][j] -= factor * m[row][j];
      if (rhs) (*rhs)[i] -= factor * (*rhs)[row];
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}

}  // namespace

int matrix_rank(RationalMatrix m) {
  return static_cast<int>(rref(m, nullptr).size());
}

std::vector<std::vector<Rational>> nullspace(RationalMatrix m) {
  std::vector<std::vector<Rational>> basis;
  if (m.empty()) return basis;
  std::size_t cols = m[0].size();
  std::vector<int> pivots = rref(m, nullptr);
  std::vector<int> pivot_of_col(cols, -1);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    pivot_of_col[pivots[r]] = static_cast<int>(r);
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (pivot_of_col[free_col] != -1) continue;
    std::vector<Rational> v(cols, rat(0));
    v[free_col] = rat(1);
    for (std::size_t col = 0; col < cols; ++col) {
      int r = pivot_of_col[col];
      if (r != -1) v[col] = -m[r][free_col];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RationalMatrix> matrix_inverse(const RationalMatrix& m) {
  std::size_t n = m.size();
  RationalMatrix aug(n, std::vector<Rational>(2 * n, rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw usage_error("matrix_inverse needs a square matrix");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = rat(1);
  }
  std::vector<int> pivots = rref(aug, nullptr);
  for (std::size_t i = 0; i < n; ++i)
    if (i >= pivots.size() || pivots[i] != static_cast<int>(i))
      return std::nullopt;
  RationalMatrix inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

Rational determinant(RationalMatrix m) {
  std::size_t n = m.size();
  Rational det = rat(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(m[piv][col])) ++piv;
    if (piv == n) return rat(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    Rational inv = 1 / m[col][col];
    for (std::size_t i = col + 1; i < n; ++i) {
      if (is_zero(m[i][col])) continue;
      Rational factor = m[i][col] * inv;
      for (std::size_t j = col; j < n; ++j) m[i][j] -= factor * m[col][j];
    }
  }
  return det;
}

std::optional<std::vector<Scalar>> solve_linear(RationalMatrix m,
                                                std::vector<Scalar> b) {
  if (m.empty()) {
    for (const Scalar& s : b)
      if (!s.is_zero()) return std::nullopt;
    return std::vector<Scalar>{};
  }
  if (m.size() != b.size()) throw usage_error("linear system shape mismatch");
  std::size_t cols = m[0].size();
  std::vector<int> pivots = rref(m, &b);
  // consistency: zero rows must have zero right-hand side
  for (std::size_t i = pivots.size(); i < m.size(); ++i)
    if (!b[i].is_zero()) return std::nullopt;
  Vars vars = b.empty() ? Vars() : b[0].vars();
  std::vector<Scalar> x(cols, Scalar::zero(vars));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = b[r];
  return x;
}

}  // namespace msym
