#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gaugeworks/redlocus.hpp"
#include "random_objects.hpp"
#include "reduced_oracle.hpp"

using namespace gaugeworks;

namespace {

const Prime p3(3);

FpHomology dims(Index h0, Index h1) { return {h0, h1}; }

int pval(Prime p) { return static_cast<int>(p.value()); }

Index euler(const FpHomology& h) { return h.h0 - h.h1; }
Index euler(const ReducedCohomology& h) { return h.h0 - h.h1 + h.h2; }

}  // namespace

TEST_CASE("de Rham and Hodge strata") {
  CHECK(coh_dR({p3, gw_test::fp(p3, {{0}})}) == dims(1, 1));
  for (int n : {1, 2, 4, -1}) CHECK(coh_dR({p3, gw_test::fp(p3, {{n}})}) == dims(0, 0));
  CHECK(validate(ThetaModule{p3, gw_test::fp(p3, {{0, 1}, {1, 0}})}).ok());
  // x^2 + 1 is irreducible mod 3
  CHECK_FALSE(validate(ThetaModule{p3, gw_test::fp(p3, {{0, -1}, {1, 0}})}).ok());

  for (const Prime p : {Prime(3), Prime(5)})
    for (int n = -7; n <= 7; ++n) {
      const ReducedFGauge g = bk_reduced(p, n);
      for (const GradedThetaModule& hod : {restrict_HTc_to_Hod(g.htc), restrict_dRplus_to_Hod(g.drp)}) {
        CHECK(hod.dim(-n) == 1);
        CHECK(is_zero(hod.theta(-n)));
        FpHomology expected = n == 0 ? dims(1, 0) : n == pval(p) ? dims(0, 1) : dims(0, 0);
        CHECK(coh_Hod(hod) == expected);
      }
      for (const ThetaModule& dr : {restrict_HTc_to_dR(g.htc), restrict_dRplus_to_dR(g.drp)}) {
        CHECK(dr.dim() == 1);
        CHECK(dr.theta(0, 0) == Fp(n, p));
        CHECK(validate(dr).ok());
      }
    }
  const ReducedFGauge z = zero_reduced(p3);
  CHECK(restrict_HTc_to_dR(z.htc).dim() == 0);
  CHECK(restrict_HTc_to_Hod(z.htc).dim(0) == 0);
  CHECK(restrict_dRplus_to_dR(z.drp).dim() == 0);
}

TEST_CASE("conjugate Hodge-Tate stratum") {
  for (const Prime p : {Prime(2), Prime(3), Prime(5), Prime(7)}) {
    CHECK(coh_HTc(bk_reduced(p, 0).htc) == dims(1, 0));
    // D_i = i + n, so D_0 = 1 on O{1}
    CHECK(coh_HTc(bk_reduced(p, 1).htc) == dims(0, 0));
    CHECK(coh_HTc(bk_reduced(p, -1).htc) == dims(0, 0));
    CHECK(coh_HTc(bk_reduced(p, pval(p)).htc) == dims(1, 1));
    CHECK(coh_HTc(bk_reduced(p, 2 * pval(p)).htc) == dims(1, 1));
    for (int n = -6; n <= 6; ++n) {
      const A1Module& m = bk_reduced(p, n).htc;
      CHECK(validate(m).ok());
      for (int i = -n; i <= -n + 8; ++i) CHECK(m.d(i) == gw_test::fp(p, {{i + n}}).block(0, 0, m.dim(i - 1), 1));
    }
  }

  // D_i = i on O{1} breaks Dx - xD = 1
  const A1Module literal(p3, -1, {1, 1}, {gw_test::fp(p3, {{1}})}, {fp_zero(0, 1, p3), gw_test::fp(p3, {{0}})});
  CHECK_FALSE(validate(literal).ok());
}

TEST_CASE("Hodge-filtered de Rham stratum") {
  CHECK(coh_dRplus(bk_reduced(p3, 0).drp) == dims(1, 1));
  CHECK(coh_dRplus(bk_reduced(p3, 1).drp) == dims(0, 1));
  CHECK(coh_dRplus(bk_reduced(p3, -1).drp) == dims(0, 0));
  CHECK(coh_dRplus(bk_reduced(p3, -3).drp) == dims(1, 1));

  // Theta(Fil^4) must land in Fil^1
  const FilThetaModule bad(p3, 0, {fp_identity(2, p3), gw_test::fp(p3, {{0}, {1}}), gw_test::fp(p3, {{0}, {1}}),
                                   gw_test::fp(p3, {{0}, {1}}), gw_test::fp(p3, {{0}, {1}})},
                           gw_test::fp(p3, {{0, 1}, {0, 0}}));
  CHECK_FALSE(validate(bad).ok());
  const FilThetaModule good(p3, 0, {fp_identity(2, p3), gw_test::fp(p3, {{0}, {1}}), gw_test::fp(p3, {{0}, {1}})},
                            gw_test::fp(p3, {{0, 0}, {1, 0}}));
  CHECK(validate(good).ok());
  const FilThetaModule crossed(p3, 0, {fp_identity(2, p3), gw_test::fp(p3, {{1}, {0}})},
                               gw_test::fp(p3, {{0, 0}, {0, 0}}));
  CHECK(validate(crossed).ok());
  const FilThetaModule unnested(p3, 0, {fp_identity(2, p3), gw_test::fp(p3, {{1}, {0}}), gw_test::fp(p3, {{0}, {1}})},
                                gw_test::fp(p3, {{0, 0}, {0, 0}}));
  CHECK_FALSE(validate(unnested).ok());
}

TEST_CASE("x^p D^p relations on random modules") {
  gw_test::Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const Prime p(trial % 2 ? 3 : 2);
    const ReducedFGauge g = gw_test::random_reduced(rng, p);
    const A1Module& m = g.htc;
    REQUIRE(validate(m).ok());
    // D^p commutes with x
    for (int i = m.lo() - 1; i <= m.hi() + 1; ++i) {
      FpMatrix dp = fp_identity(m.dim(i + 1), p), dq = fp_identity(m.dim(i), p);
      for (int j = 0; j < pval(p); ++j) {
        dp = FpMatrix(m.d(i + 1 - j) * dp);
        dq = FpMatrix(m.d(i - j) * dq);
      }
      const FpMatrix lhs = dp * m.x(i);
      const FpMatrix rhs = m.dim(i - pval(p)) == 0 ? fp_zero(lhs.rows(), lhs.cols(), p) : FpMatrix(m.x(i - pval(p)) * dq);
      CHECK(is_zero(FpMatrix(lhs - rhs)));
    }
    CHECK(validate(g).ok());
  }
}

TEST_CASE("bk_reduced against the brute-force total complex") {
  for (const Prime p : {Prime(3), Prime(5)})
    for (int n = -pval(p); n <= pval(p); ++n) {
      const ReducedFGauge g = bk_reduced(p, n);
      CHECK(validate(g).ok());
      const ReducedCohomology h = reduced_syntomic_cohomology(g);
      CHECK(h == gw_test::brute_force_reduced(g));
    }
  CHECK(reduced_syntomic_cohomology(bk_reduced(p3, 0)) == ReducedCohomology{1, 1, 0});
  CHECK(reduced_syntomic_cohomology(zero_reduced(p3)) == ReducedCohomology{0, 0, 0});
}

TEST_CASE("alphas must be equivariant isomorphisms") {
  ReducedFGauge g = bk_reduced(p3, 1);
  g.alpha_dR = gw_test::fp(p3, {{0}});
  CHECK_FALSE(validate(g).ok());
  CHECK_THROWS_AS(reduced_syntomic_cohomology(g), LawViolation);

  ReducedFGauge h = bk_reduced(p3, 2);
  h.drp = FilThetaModule(p3, -2, {fp_identity(1, p3)}, gw_test::fp(p3, {{1}}));  // Theta = 1 != 2
  const auto r = validate(h);
  CHECK_FALSE(r.ok());
  CHECK(r.violations.size() == 1);
  CHECK_THROWS_AS(reduced_syntomic_cohomology(h), LawViolation);

  ReducedFGauge k = bk_reduced(p3, 2);
  k.alpha_hod.clear();
  CHECK_FALSE(validate(k).ok());
}

TEST_CASE("group law and duality of Breuil-Kisin twists") {
  for (const Prime p : {Prime(2), Prime(3), Prime(5)}) {
    const int pv = pval(p);
    for (int n = -pv; n <= pv; ++n) {
      CHECK(same_structure(dual(bk_reduced(p, n)), bk_reduced(p, -n)));
      for (int m = -pv; m <= pv; ++m) CHECK(same_structure(tensor(bk_reduced(p, n), bk_reduced(p, m)), bk_reduced(p, n + m)));
      CHECK(reduced_syntomic_cohomology(tensor(bk_reduced(p, n), bk_reduced(p, -n))) ==
            reduced_syntomic_cohomology(bk_reduced(p, 0)));
    }
  }
}

TEST_CASE("randomized glued data") {
  gw_test::Rng rng(42);
  for (int trial = 0; trial < 150; ++trial) {
    const Prime p(trial % 3 == 0 ? 5 : 3);
    const ReducedFGauge g = gw_test::random_reduced(rng, p);
    REQUIRE(validate(g).ok());
    const ReducedCohomology h = reduced_syntomic_cohomology(g);
    const Index chi = euler(coh_dRplus(g.drp)) + euler(coh_HTc(g.htc)) -
                      euler(coh_dR(restrict_dRplus_to_dR(g.drp))) - euler(coh_Hod(restrict_dRplus_to_Hod(g.drp)));
    CHECK(euler(h) == chi);

    const ReducedFGauge d = dual(g);
    CHECK(validate(d).ok());
    CHECK(reduced_syntomic_cohomology(dual(d)) == h);

    const ReducedFGauge g2 = gw_test::random_reduced(rng, p, 2);
    const ReducedFGauge s = direct_sum(g, g2);
    CHECK(validate(s).ok());
    const ReducedCohomology h2 = reduced_syntomic_cohomology(g2), hs = reduced_syntomic_cohomology(s);
    CHECK(hs == ReducedCohomology{h.h0 + h2.h0, h.h1 + h2.h1, h.h2 + h2.h2});

    const ReducedFGauge t = tensor(g, g2);
    CHECK(validate(t).ok());
    CHECK(euler(reduced_syntomic_cohomology(t)) ==
          euler(coh_dRplus(t.drp)) + euler(coh_HTc(t.htc)) - euler(coh_dR(restrict_dRplus_to_dR(t.drp))) -
              euler(coh_Hod(restrict_dRplus_to_Hod(t.drp))));
    // tensoring with the unit changes nothing
    CHECK(reduced_syntomic_cohomology(tensor(g, bk_reduced(p, 0))) == h);
  }
}

TEST_CASE("non-honest HT,c data") {
  // Fil_0 -0-> Fil_1 with D_1 x_0 = 1 impossible; x = 0 forces failure of Dx - xD = 1
  const A1Module m(p3, 0, {1, 1}, {gw_test::fp(p3, {{0}})}, {fp_zero(0, 1, p3), gw_test::fp(p3, {{0}})});
  CHECK_FALSE(honest_form(m).has_value());
  CHECK_FALSE(validate(m).ok());
  const A1Module zero(p3, 0, {0}, {}, {fp_zero(0, 0, p3)});
  CHECK(honest_form(zero).has_value());
  CHECK(coh_HTc(zero) == dims(0, 0));
}
