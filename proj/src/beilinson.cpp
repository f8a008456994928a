#include "gaugeworks/beilinson.hpp"

#include <tuple>

#include "gaugeworks/error.hpp"

namespace gaugeworks {

CohomologyDims cohomology_dims(const CochainComplex& c) {
  const Index r = rank(c.d);
  return {c.dim0() - r, c.dim1() - r};
}

void check_chain_map(const ChainMap& f, const CochainComplex& c, const CochainComplex& e) {
  if (f.f0.rows() != e.dim0() || f.f0.cols() != c.dim0() || f.f1.rows() != e.dim1() ||
      f.f1.cols() != c.dim1())
    throw LawViolation("chain map: shape mismatch");
  if (!is_zero(QMatrix(e.d * f.f0 - f.f1 * c.d)))
    throw LawViolation("chain map: does not commute with differentials");
}

SquareData corners(const FilteredPhiModule& d) {
  const Index n = d.dim(), f = d.fil0_dim();
  const QMatrix iota = d.fil0_inclusion();
  const QMatrix one_minus_phi = identity<Rational>(n) - d.frobenius();

  SquareData s;
  s.a = {QMatrix(one_minus_phi * iota)};
  s.b = CochainComplex::in_degree_zero(f);
  s.c = {one_minus_phi};
  s.d = CochainComplex::in_degree_zero(n);
  s.a_to_b = {identity<Rational>(f), zeros<Rational>(0, n)};
  s.a_to_c = {iota, identity<Rational>(n)};
  s.b_to_d = {iota, zeros<Rational>(0, 0)};
  s.c_to_d = {identity<Rational>(n), zeros<Rational>(0, n)};

  check_chain_map(s.a_to_b, s.a, s.b);
  check_chain_map(s.a_to_c, s.a, s.c);
  check_chain_map(s.b_to_d, s.b, s.d);
  check_chain_map(s.c_to_d, s.c, s.d);
  if (!is_zero(QMatrix(s.b_to_d.f0 * s.a_to_b.f0 - s.c_to_d.f0 * s.a_to_c.f0)))
    throw LawViolation("corners: square does not commute");
  return s;
}

bool CartesianReport::is_zero() const {
  if (commutativity_defect != 0 || !total_cohomology) return false;
  for (Index h : *total_cohomology)
    if (h != 0) return false;
  return true;
}

namespace {

// Block matrix from a grid of optional blocks; empty blocks are zero.
QMatrix assemble(const std::vector<Index>& row_dims, const std::vector<Index>& col_dims,
                 const std::vector<std::tuple<std::size_t, std::size_t, QMatrix>>& blocks) {
  Index rows = 0, cols = 0;
  std::vector<Index> row_off, col_off;
  for (Index r : row_dims) row_off.push_back(rows), rows += r;
  for (Index c : col_dims) col_off.push_back(cols), cols += c;
  QMatrix m = zeros<Rational>(rows, cols);
  for (const auto& [i, j, b] : blocks) m.block(row_off[i], col_off[j], b.rows(), b.cols()) = b;
  return m;
}

}  // namespace

CartesianReport verify_cartesian(const SquareData& s) {
  CartesianReport out;
  out.commutativity_defect =
      rank(QMatrix(s.b_to_d.f0 * s.a_to_b.f0 - s.c_to_d.f0 * s.a_to_c.f0)) +
      rank(QMatrix(s.b_to_d.f1 * s.a_to_b.f1 - s.c_to_d.f1 * s.a_to_c.f1));
  if (out.commutativity_defect != 0) return out;

  // Double complex X_h^v with columns A, B ⊕ C, D; horizontal maps
  // (a_to_b, a_to_c) and (b_to_d, -c_to_d); total differential d_h + (-1)^h d_v.
  const QMatrix& da = s.a.d;
  const QMatrix& db = s.b.d;
  const QMatrix& dc = s.c.d;
  const QMatrix& dd = s.d.d;
  // Tot^0 = A0
  // Tot^1 = A1, B0, C0
  // Tot^2 = B1, C1, D0
  // Tot^3 = D1
  const QMatrix t0 = assemble({s.a.dim1(), s.b.dim0(), s.c.dim0()}, {s.a.dim0()},
                              {{0, 0, da}, {1, 0, s.a_to_b.f0}, {2, 0, s.a_to_c.f0}});
  const QMatrix t1 = assemble({s.b.dim1(), s.c.dim1(), s.d.dim0()}, {s.a.dim1(), s.b.dim0(), s.c.dim0()},
                              {{0, 0, s.a_to_b.f1},
                               {1, 0, s.a_to_c.f1},
                               {0, 1, QMatrix(-db)},
                               {1, 2, QMatrix(-dc)},
                               {2, 1, s.b_to_d.f0},
                               {2, 2, QMatrix(-s.c_to_d.f0)}});
  const QMatrix t2 = assemble({s.d.dim1()}, {s.b.dim1(), s.c.dim1(), s.d.dim0()},
                              {{0, 0, s.b_to_d.f1}, {0, 1, QMatrix(-s.c_to_d.f1)}, {0, 2, dd}});
  if (!is_zero(QMatrix(t1 * t0)) || !is_zero(QMatrix(t2 * t1)))
    throw LawViolation("verify_cartesian: total differential does not square to zero");

  const Index r0 = rank(t0), r1 = rank(t1), r2 = rank(t2);
  out.total_cohomology = std::array<Index, 4>{t0.cols() - r0, t1.cols() - r1 - r0,
                                              t2.cols() - r2 - r1, t2.rows() - r2};
  return out;
}

SquareData corrupt_corner_b(const SquareData& s) {
  const Index b0 = s.b.dim0();
  if (b0 == 0) throw PreconditionError("corrupt_corner_b: B^0 is already zero");
  SquareData out = s;
  out.b.d = s.b.d.leftCols(b0 - 1);
  out.a_to_b.f0 = s.a_to_b.f0.topRows(b0 - 1);
  out.b_to_d.f0 = s.b_to_d.f0.leftCols(b0 - 1);
  return out;
}

FMFibre fm_fibre(const FilteredPhiModule& d) {
  const QMatrix iota = d.fil0_inclusion();
  const QMatrix diff = iota - d.frobenius() * iota;
  FMFibre out;
  out.h0_in_fil0 = fraction_free_kernel(diff);
  out.h1_dim = diff.rows() - fraction_free_rank(diff);
  return out;
}

}  // namespace gaugeworks
