// Reduced syntomic cohomology from the component complexes, assembled
// without the library's total complex and ranked by enumeration over F_p.

#pragma once

#include "gaugeworks/redlocus.hpp"
#include "support.hpp"

namespace gw_test {

inline gaugeworks::ReducedCohomology brute_force_reduced(const gaugeworks::ReducedFGauge& g) {
  const Prime p = g.htc.prime();
  const gaugeworks::ReducedComponents c = gaugeworks::reduced_components(g);
  const Index s0a = c.dR_plus.cols(), s0b = c.htc.cols(), s1a = c.dR_plus.rows(), s1b = c.htc.rows();
  const Index t0a = c.dR.cols(), t0b = c.hod.cols(), t1a = c.dR.rows(), t1b = c.hod.rows();
  const Index c0 = s0a + s0b, c1 = s1a + s1b + t0a + t0b, c2 = t1a + t1b;
  FpMatrix d0 = gaugeworks::fp_zero(c1, c0, p), d1 = gaugeworks::fp_zero(c2, c1, p);
  auto put = [](FpMatrix& m, Index r, Index col, const FpMatrix& b, int sign) {
    for (Index i = 0; i < b.rows(); ++i)
      for (Index j = 0; j < b.cols(); ++j) m(r + i, col + j) = sign > 0 ? b(i, j) : Fp(0) - b(i, j);
  };
  put(d0, 0, 0, c.dR_plus, 1);
  put(d0, s1a, s0a, c.htc, 1);
  put(d0, s1a + s1b, 0, c.a_dR.f0, 1);
  put(d0, s1a + s1b, s0a, c.b_dR.f0, -1);
  put(d0, s1a + s1b + t0a, 0, c.a_hod.f0, 1);
  put(d0, s1a + s1b + t0a, s0a, c.b_hod.f0, -1);
  put(d1, 0, 0, c.a_dR.f1, 1);
  put(d1, 0, s1a, c.b_dR.f1, -1);
  put(d1, t1a, 0, c.a_hod.f1, 1);
  put(d1, t1a, s1a, c.b_hod.f1, -1);
  put(d1, 0, s1a + s1b, c.dR, -1);
  put(d1, t1a, s1a + s1b + t0a, c.hod, -1);
  const Index r0 = brute_force_rank(d0, p), r1 = brute_force_rank(d1, p);
  return {c0 - r0, c1 - r0 - r1, c2 - r1};
}

}  // namespace gw_test
