#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gaugeworks/higgs.hpp"
#include "random_objects.hpp"

using namespace gaugeworks;

namespace {

const Prime p3(3);

Index binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Index r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

std::vector<Index> dims_of(const std::vector<std::pair<int, Index>>& h) {
  std::vector<Index> out;
  for (const auto& [k, v] : h) out.push_back(v);
  return out;
}

// Koszul complex built from exterior monomials as sorted index lists; the sign
// of e_j ∧ e_S is the parity of the bubble sort putting j in place.
std::vector<FpMatrix> oracle_koszul(const GradedHiggsModule& m, int i) {
  const int d = m.directions();
  std::vector<std::vector<std::vector<int>>> by_size(static_cast<std::size_t>(d + 1));
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    std::vector<int> s;
    for (int j = 0; j < d; ++j)
      if (mask >> j & 1u) s.push_back(j);
    by_size[s.size()].push_back(s);
  }
  for (auto& v : by_size) std::sort(v.begin(), v.end());
  std::vector<FpMatrix> out;
  for (int k = 0; k < d; ++k) {
    const auto& src = by_size[k];
    const auto& dst = by_size[k + 1];
    const Index a = m.dim(i - k), b = m.dim(i - k - 1);
    FpMatrix diff = fp_zero(b * static_cast<Index>(dst.size()), a * static_cast<Index>(src.size()), m.prime());
    for (std::size_t s = 0; s < src.size(); ++s)
      for (int j = 0; j < d; ++j) {
        if (std::find(src[s].begin(), src[s].end(), j) != src[s].end()) continue;
        std::vector<int> w{j};
        w.insert(w.end(), src[s].begin(), src[s].end());
        int swaps = 0;
        for (std::size_t x = 0; x + 1 < w.size() && w[x] > w[x + 1]; ++x, ++swaps) std::swap(w[x], w[x + 1]);
        const auto t = std::find(dst.begin(), dst.end(), w) - dst.begin();
        FpMatrix block = m.phi(j, i - k);
        if (swaps % 2) block = fp_zero(b, a, m.prime()) - block;
        diff.block(t * b, static_cast<Index>(s) * a, b, a) = block;
      }
    out.push_back(diff);
  }
  return out;
}

GradedHiggsModule koszul_example(Prime p) {
  // V_0 = <1>, V_{-1} = <e1, e2>, V_{-2} = <f>; phi_1 : 1 -> e1, e2 -> f; phi_2 : 1 -> e2, e1 -> f
  std::vector<std::vector<FpMatrix>> phi{
      {fp_zero(0, 1, p), gw_test::fp(p, {{0, 1}}), gw_test::fp(p, {{1}, {0}})},
      {fp_zero(0, 1, p), gw_test::fp(p, {{1, 0}}), gw_test::fp(p, {{0}, {1}})}};
  return GradedHiggsModule(p, 2, -2, {1, 2, 1}, phi);
}

}  // namespace

TEST_CASE("check_higgs") {
  CHECK(check_higgs(GradedHiggsModule::trivial(p3, 3, -1, {2, 1, 3})).ok());
  CHECK(check_higgs(koszul_example(p3)).ok());

  // two non-commuting nilpotents on a single graded step are fine (no length-2 words)
  const FpMatrix a = gw_test::fp(p3, {{0, 1}, {0, 0}}), b = gw_test::fp(p3, {{0, 0}, {1, 0}});
  const GradedHiggsModule flat(p3, 2, 0, {2, 2, 2}, {{fp_zero(0, 2, p3), a, a}, {fp_zero(0, 2, p3), b, b}});
  const LawReport r = check_higgs(flat);
  CHECK_FALSE(r.ok());
  CHECK(r.violations.size() == 1);
  CHECK(r.violations.front().find("phi_1 phi_2 = phi_2 phi_1 failed at i = 2") != std::string::npos);
  CHECK_THROWS_AS(hodge_cohomology(flat, 2), LawViolation);

  CHECK_THROWS_AS(GradedHiggsModule(p3, 1, 0, {1, 1}, {{fp_zero(0, 1, p3), gw_test::fp(p3, {{1, 0}})}}),
                  PreconditionError);
  CHECK_THROWS_AS(GradedHiggsModule(p3, 2, 0, {1}, {{fp_zero(0, 1, p3)}}), PreconditionError);
}

TEST_CASE("worked examples") {
  const GradedHiggsModule zero = GradedHiggsModule::trivial(p3, 3, -4, {1, 2, 0, 3, 1});
  for (int i = -6; i <= 3; ++i) {
    const auto h = hodge_cohomology(zero, i);
    REQUIRE(h.size() == 4);
    for (const auto& [k, v] : h) CHECK(v == zero.dim(i - k) * binomial(3, k));
  }

  const GradedHiggsModule id(p3, 1, -1, {1, 1}, {{fp_zero(0, 1, p3), gw_test::fp(p3, {{1}})}});
  CHECK(dims_of(hodge_cohomology(id, 0)) == std::vector<Index>{0, 0});
  CHECK(dims_of(hodge_cohomology(id, 1)) == std::vector<Index>{0, 1});

  for (const Prime p : {Prime(2), Prime(3), Prime(5)}) {
    const GradedHiggsModule ex = koszul_example(p);
    const auto diffs = oracle_koszul(ex, 0);
    REQUIRE(diffs.size() == 2);
    CHECK(diffs[0].rows() == 4);
    CHECK(diffs[1].cols() == 4);
    const Index r0 = gw_test::brute_force_rank(diffs[0], p), r1 = gw_test::brute_force_rank(diffs[1], p);
    CHECK(r0 == 1);
    CHECK(r1 == 1);
    CHECK(dims_of(hodge_cohomology(ex, 0)) == std::vector<Index>{1 - r0, 4 - r0 - r1, 1 - r1});
    CHECK(dims_of(hodge_cohomology(ex, -1)) == std::vector<Index>{0, 0, 0});
  }

  const GradedHiggsModule none = GradedHiggsModule::trivial(p3, 0, 0, {2, 5});
  CHECK(dims_of(hodge_cohomology(none, 1)) == std::vector<Index>{5});
  CHECK(koszul_differentials(none, 1).empty());
}

TEST_CASE("random commuting fields") {
  gw_test::Rng rng(80);
  for (int trial = 0; trial < 300; ++trial) {
    const Prime p(trial % 3 == 0 ? 2 : trial % 3 == 1 ? 3 : 5);
    const int d = rng.uniform(0, 3);
    const GradedHiggsModule m = gw_test::random_higgs(rng, p, d);
    REQUIRE(m.total_dim() <= 12);
    REQUIRE(check_higgs(m).ok());
    for (int i = m.lo() - 1; i <= m.hi() + d + 1; ++i) {
      const auto diffs = koszul_differentials(m, i);
      const auto oracle = oracle_koszul(m, i);
      REQUIRE(diffs.size() == oracle.size());
      for (std::size_t k = 0; k < diffs.size(); ++k) CHECK(diffs[k] == oracle[k]);
      for (std::size_t k = 0; k + 1 < diffs.size(); ++k) CHECK(is_zero(FpMatrix(diffs[k + 1] * diffs[k])));

      const auto h = hodge_cohomology(m, i);
      Index chi = 0, expected = 0;
      for (const auto& [k, v] : h) {
        chi += k % 2 ? -v : v;
        expected += (k % 2 ? -1 : 1) * binomial(d, k) * m.dim(i - k);
        if (diffs.empty()) continue;
        // brute force where the enumeration is small
        const FpMatrix& out = k < d ? diffs[static_cast<std::size_t>(k)] : diffs.back();
        if (out.cols() <= 8 && p.value() <= 3 && k < d) {
          const Index in = k > 0 ? rank(diffs[static_cast<std::size_t>(k - 1)]) : 0;
          CHECK(v == gw_test::brute_force_nullity(out, p) - in);
        }
      }
      CHECK(chi == expected);
      if (d == 0) CHECK(h == std::vector<std::pair<int, Index>>{{0, m.dim(i)}});
    }
  }
}

TEST_CASE("cohomology in degree i only sees V_i ... V_{i-d}") {
  gw_test::Rng rng(81);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = rng.uniform(1, 3);
    const GradedHiggsModule m = gw_test::random_higgs(rng, p3, d, 9);
    if (m.total_dim() == 0) continue;
    // add an unrelated piece two steps above the window, with zero fields into it and out of it
    std::vector<Index> dims;
    std::vector<std::vector<FpMatrix>> phi(static_cast<std::size_t>(d));
    for (int i = m.lo(); i <= m.hi() + 2; ++i) {
      dims.push_back(i == m.hi() + 2 ? 3 : m.dim(i));
      for (int k = 0; k < d; ++k) phi[k].push_back(i <= m.hi() ? m.phi(k, i) : fp_zero(m.dim(i - 1), dims.back(), p3));
    }
    const GradedHiggsModule bigger(p3, d, m.lo(), dims, phi);
    REQUIRE(check_higgs(bigger).ok());
    for (int i = m.lo(); i <= m.hi() + 1; ++i) CHECK(hodge_cohomology(bigger, i) == hodge_cohomology(m, i));
    CHECK(hodge_cohomology(bigger, m.hi() + 2) != hodge_cohomology(m, m.hi() + 2));
  }
}
