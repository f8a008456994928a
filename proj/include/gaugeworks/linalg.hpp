// Dense exact linear algebra over a field, templated on the scalar.
//
// Every routine here is exact: pivots are chosen by the first nonzero entry,
// never by magnitude. Works for Rational and Fp, and for any scalar with
// field operations and an is_zero() overload.

#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>

#include <optional>
#include <vector>

#include "gaugeworks/scalar.hpp"

namespace gaugeworks {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = Matrix<Rational>;
using FpMatrix = Matrix<Fp>;
using Index = Eigen::Index;

inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const Fp& x) { return x.is_zero(); }

template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) return false;
  return true;
}

/// Matrices over F_p whose entries are bound to p (Eigen's Zero() produces
/// unbound literals, which are fine for arithmetic but not for printing).
FpMatrix fp_zero(Index rows, Index cols, Prime p);
FpMatrix fp_identity(Index n, Prime p);
FpMatrix fp_scalar(Index n, std::int64_t c, Prime p);

/// Entrywise reduction of a p-local rational matrix.
FpMatrix reduce_mod_p(const QMatrix& m, Prime p);

template <typename Scalar>
struct Echelon {
  Matrix<Scalar> rref;
  std::vector<Index> pivot_cols;
  Index rank() const { return static_cast<Index>(pivot_cols.size()); }
};

/// Reduced row echelon form.
template <typename Scalar>
Echelon<Scalar> echelon(Matrix<Scalar> m) {
  Echelon<Scalar> out;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index piv = row;
    while (piv < m.rows() && is_zero(m(piv, col))) ++piv;
    if (piv == m.rows()) continue;
    m.row(row).swap(m.row(piv));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Index j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const Scalar f = m(i, col);
      for (Index j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.rref = std::move(m);
  return out;
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  return echelon<S>(Matrix<S>(m)).rank();
}

/// Columns form a basis of the null space.
template <typename Derived>
Matrix<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  const auto e = echelon<S>(Matrix<S>(m));
  const Index n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index c : e.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
  Matrix<S> basis(n, n - e.rank());
  for (Index j = 0; j < basis.cols(); ++j)
    for (Index i = 0; i < n; ++i) basis(i, j) = S(0);
  Index k = 0;
  for (Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, k) = S(1);
    for (Index r = 0; r < e.rank(); ++r) basis(e.pivot_cols[r], k) = -e.rref(r, free);
    ++k;
  }
  return basis;
}

/// Columns form a basis of the column space, chosen among the columns of m.
template <typename Derived>
Matrix<typename Derived::Scalar> column_space(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  const auto e = echelon<S>(Matrix<S>(m));
  Matrix<S> basis(m.rows(), e.rank());
  for (Index k = 0; k < e.rank(); ++k) basis.col(k) = m.col(e.pivot_cols[k]);
  return basis;
}

/// Standard basis vectors spanning a complement of the column space; their
/// classes form a basis of the cokernel.
template <typename Derived>
Matrix<typename Derived::Scalar> cokernel_complement(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  const Index n = m.rows();
  Matrix<S> aug(n, m.cols() + n);
  aug.leftCols(m.cols()) = m;
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) aug(i, m.cols() + j) = i == j ? S(1) : S(0);
  const auto e = echelon<S>(aug);
  std::vector<Index> picked;
  for (Index c : e.pivot_cols)
    if (c >= m.cols()) picked.push_back(c - m.cols());
  Matrix<S> basis(n, static_cast<Index>(picked.size()));
  for (Index k = 0; k < basis.cols(); ++k)
    for (Index i = 0; i < n; ++i) basis(i, k) = i == picked[k] ? S(1) : S(0);
  return basis;
}

/// Some X with a * X == b, if one exists.
template <typename Scalar>
std::optional<Matrix<Scalar>> solve(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  const auto e = echelon<Scalar>(aug);
  for (Index c : e.pivot_cols)
    if (c >= a.cols()) return std::nullopt;
  Matrix<Scalar> x(a.cols(), b.cols());
  for (Index j = 0; j < x.cols(); ++j)
    for (Index i = 0; i < x.rows(); ++i) x(i, j) = Scalar(0);
  for (Index r = 0; r < e.rank(); ++r)
    for (Index j = 0; j < b.cols(); ++j) x(e.pivot_cols[r], j) = e.rref(r, a.cols() + j);
  return x;
}

/// Throws PreconditionError when m is singular or not square.
template <typename Scalar>
Matrix<Scalar> inverse(const Matrix<Scalar>& m) {
  if (m.rows() != m.cols()) throw PreconditionError("inverse of a non-square matrix");
  Matrix<Scalar> id(m.rows(), m.rows());
  for (Index j = 0; j < id.cols(); ++j)
    for (Index i = 0; i < id.rows(); ++i) id(i, j) = i == j ? Scalar(1) : Scalar(0);
  auto x = solve<Scalar>(m, id);
  if (!x || rank(m) != m.rows()) throw PreconditionError("matrix is singular");
  return *x;
}

template <typename Scalar>
Scalar determinant(Matrix<Scalar> m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant of a non-square matrix");
  Scalar det(1);
  for (Index col = 0; col < m.cols(); ++col) {
    Index piv = col;
    while (piv < m.rows() && is_zero(m(piv, col))) ++piv;
    if (piv == m.rows()) return Scalar(0);
    if (piv != col) {
      m.row(col).swap(m.row(piv));
      det = -det;
    }
    det = det * m(col, col);
    const Scalar inv = Scalar(1) / m(col, col);
    for (Index i = col + 1; i < m.rows(); ++i) {
      if (is_zero(m(i, col))) continue;
      const Scalar f = m(i, col) * inv;
      for (Index j = col; j < m.cols(); ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

template <typename Scalar>
bool is_invertible(const Matrix<Scalar>& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

/// Basis of span(a) + span(b).
template <typename Scalar>
Matrix<Scalar> subspace_sum(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> both(a.rows(), a.cols() + b.cols());
  both << a, b;
  return column_space(both);
}

/// Basis of span(a) ∩ span(b), both given by column bases.
template <typename Scalar>
Matrix<Scalar> subspace_intersection(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> both(a.rows(), a.cols() + b.cols());
  both << a, -b;
  const Matrix<Scalar> k = kernel(both);
  return column_space(Matrix<Scalar>(a * k.topRows(a.cols())));
}

template <typename Scalar>
bool same_span(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.rows() != b.rows()) return false;
  const Index ra = rank(a);
  return ra == rank(b) && rank(subspace_sum(a, b)) == ra;
}

/// Coordinates of the columns of v in the (independent) columns of basis.
/// Throws if some column is not in the span.
template <typename Scalar>
Matrix<Scalar> coordinates(const Matrix<Scalar>& basis, const Matrix<Scalar>& v) {
  auto x = solve<Scalar>(basis, v);
  if (!x) throw PreconditionError("vector not in the span of the given basis");
  return *x;
}

template <typename Scalar>
Matrix<Scalar> matrix_power(const Matrix<Scalar>& m, unsigned k) {
  Matrix<Scalar> result(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) result(i, j) = i == j ? Scalar(1) : Scalar(0);
  Matrix<Scalar> base = m;
  while (k) {
    if (k & 1u) result = (result * base).eval();
    base = (base * base).eval();
    k >>= 1u;
  }
  return result;
}

template <typename Scalar>
bool is_nilpotent(const Matrix<Scalar>& m) {
  return is_zero(matrix_power(m, static_cast<unsigned>(m.rows())));
}

template <typename Scalar>
Matrix<Scalar> kronecker(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

/// Square block-diagonal matrix.
template <typename Scalar>
Matrix<Scalar> block_diagonal(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> m(a.rows() + b.rows(), a.cols() + b.cols());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) m(i, j) = Scalar(0);
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

/// Zero-filled matrix with entries of the right type. For Fp the zeros are
/// unbound literals.
template <typename Scalar>
Matrix<Scalar> zeros(Index rows, Index cols) {
  Matrix<Scalar> m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = Scalar(0);
  return m;
}

template <typename Scalar>
Matrix<Scalar> identity(Index n) {
  Matrix<Scalar> m = zeros<Scalar>(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

/// Fraction-free (Bareiss) elimination: null space of a rational matrix.
/// Shares no code with echelon(); used where two independent routes are
/// compared.
QMatrix fraction_free_kernel(const QMatrix& m);
Index fraction_free_rank(const QMatrix& m);

}  // namespace gaugeworks
