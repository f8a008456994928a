#include "gaugeworks/smith.hpp"

#include <algorithm>
#include <limits>

namespace gaugeworks {

void require_p_local(const QMatrix& m, Prime p, const char* what) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_p_local(m(i, j), p))
        throw LawViolation(std::string(what) + ": entry (" + std::to_string(i) + ", " +
                           std::to_string(j) + ") = " + to_string(m(i, j)) +
                           " is not in Z_(p) for p = " + std::to_string(p.value()));
}

SmithForm smith_normal_form(const QMatrix& m, Prime p) {
  require_p_local(m, p, "smith_normal_form");
  const Index rows = m.rows(), cols = m.cols();
  SmithForm s{identity<Rational>(rows), m, identity<Rational>(cols), {}};
  QMatrix& a = s.d;

  for (Index t = 0; t < std::min(rows, cols); ++t) {
    Index pi = -1, pj = -1;
    int best = std::numeric_limits<int>::max();
    for (Index j = t; j < cols; ++j)
      for (Index i = t; i < rows; ++i) {
        if (a(i, j) == 0) continue;
        const int v = valuation(a(i, j), p).value();
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;

    a.row(t).swap(a.row(pi));
    s.u.row(t).swap(s.u.row(pi));
    a.col(t).swap(a.col(pj));
    s.v.col(t).swap(s.v.col(pj));

    const Rational pe = prime_power(p, best);
    const Rational unit_inv = pe / a(t, t);
    a.row(t) *= unit_inv;
    s.u.row(t) *= unit_inv;

    for (Index i = t + 1; i < rows; ++i) {
      if (a(i, t) == 0) continue;
      const Rational f = a(i, t) / pe;
      a.row(i) -= f * a.row(t);
      s.u.row(i) -= f * s.u.row(t);
    }
    for (Index j = t + 1; j < cols; ++j) {
      if (a(t, j) == 0) continue;
      const Rational g = a(t, j) / pe;
      a.col(j) -= g * a.col(t);
      s.v.col(j) -= g * s.v.col(t);
    }
    s.exponents.push_back(best);
  }
  return s;
}

std::vector<int> smith_valuations(const QMatrix& m, Prime p) {
  int shift = 0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) shift = std::max(shift, -valuation(m(i, j), p).value());
  const QMatrix scaled = m * prime_power(p, shift);
  auto e = smith_normal_form(scaled, p).exponents;
  for (int& x : e) x -= shift;
  return e;
}

}  // namespace gaugeworks
