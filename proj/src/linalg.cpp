#include "gaugeworks/linalg.hpp"

namespace gaugeworks {

FpMatrix fp_zero(Index rows, Index cols, Prime p) {
  FpMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = Fp(0, p);
  return m;
}

FpMatrix fp_identity(Index n, Prime p) { return fp_scalar(n, 1, p); }

FpMatrix fp_scalar(Index n, std::int64_t c, Prime p) {
  FpMatrix m = fp_zero(n, n, p);
  for (Index i = 0; i < n; ++i) m(i, i) = Fp(c, p);
  return m;
}

FpMatrix reduce_mod_p(const QMatrix& m, Prime p) {
  FpMatrix out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) out(i, j) = reduce_mod_p(m(i, j), p);
  return out;
}

namespace {

using IntRows = std::vector<std::vector<Integer>>;

struct IntEchelon {
  IntRows a;
  std::vector<Index> pivot_cols;
};

IntEchelon bareiss(const QMatrix& m) {
  IntEchelon e;
  e.a.assign(static_cast<std::size_t>(m.rows()), std::vector<Integer>(static_cast<std::size_t>(m.cols())));
  for (Index i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (Index j = 0; j < m.cols(); ++j) l = lcm(l, Integer(denominator(m(i, j))));
    for (Index j = 0; j < m.cols(); ++j)
      e.a[i][j] = Integer(numerator(m(i, j))) * (l / Integer(denominator(m(i, j))));
  }
  const auto rows = static_cast<std::size_t>(m.rows());
  const auto cols = static_cast<std::size_t>(m.cols());
  Integer prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t piv = row;
    while (piv < rows && e.a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(e.a[row], e.a[piv]);
    for (std::size_t i = row + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j)
        e.a[i][j] = (e.a[row][col] * e.a[i][j] - e.a[i][col] * e.a[row][j]) / prev;
      e.a[i][col] = 0;
    }
    prev = e.a[row][col];
    e.pivot_cols.push_back(static_cast<Index>(col));
    ++row;
  }
  return e;
}

}  // namespace

Index fraction_free_rank(const QMatrix& m) {
  return static_cast<Index>(bareiss(m).pivot_cols.size());
}

QMatrix fraction_free_kernel(const QMatrix& m) {
  const IntEchelon e = bareiss(m);
  const Index n = m.cols();
  const auto r = static_cast<Index>(e.pivot_cols.size());
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index c : e.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
  QMatrix basis = zeros<Rational>(n, n - r);
  Index k = 0;
  for (Index f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    basis(f, k) = 1;
    for (Index row = r - 1; row >= 0; --row) {
      const Index pc = e.pivot_cols[static_cast<std::size_t>(row)];
      Rational acc = 0;
      for (Index j = pc + 1; j < n; ++j) acc += Rational(e.a[row][j]) * basis(j, k);
      basis(pc, k) = -acc / Rational(e.a[row][pc]);
    }
    ++k;
  }
  return basis;
}

}  // namespace gaugeworks
