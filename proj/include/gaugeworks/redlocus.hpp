// Coefficients on the four strata of the reduced locus over F_p (de Rham,
// Hodge, conjugate Hodge-Tate, Hodge-filtered de Rham), their restriction
// functors, and reduced syntomic cohomology of glued data.

#pragma once

#include <map>
#include <optional>

#include "gaugeworks/error.hpp"
#include "gaugeworks/fgmodule.hpp"
#include "gaugeworks/linalg.hpp"

namespace gaugeworks {

/// (V, Theta) with Theta^p - Theta nilpotent.
struct ThetaModule {
  Prime p;
  FpMatrix theta;
  Index dim() const { return theta.rows(); }
};

LawReport validate(const ThetaModule& m);
/// fib(V -Theta-> V)
FpHomology coh_dR(const ThetaModule& m);

/// V_i for i in [lo, lo + dims.size()), zero elsewhere; theta[k] : V_{lo+k} -> V_{lo+k-p}.
class GradedThetaModule {
public:
  GradedThetaModule(Prime p, int lo, std::vector<Index> dims, std::vector<FpMatrix> theta);
  static GradedThetaModule zero(Prime p) { return GradedThetaModule(p, 0, {}, {}); }

  Prime prime() const noexcept { return p_; }
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(dims_.size()) - 1; }
  Index dim(int i) const;
  /// V_i -> V_{i-p}, zero outside the window.
  FpMatrix theta(int i) const;

private:
  Prime p_;
  int lo_;
  std::vector<Index> dims_;
  std::vector<FpMatrix> theta_;
};

LawReport validate(const GradedThetaModule& m);
/// fib(V_0 -Theta-> V_{-p})
FpHomology coh_Hod(const GradedThetaModule& m);

/// Increasing diagram Fil_lo -x-> ... -x-> Fil_hi with D_i : Fil_i -> Fil_{i-1}.
/// Below lo everything is zero; above hi x is the identity and
/// D_{hi+k} = x_{hi-1} D_hi + k, the unique extension keeping Dx - xD = 1.
class A1Module {
public:
  /// x[k] : Fil_{lo+k} -> Fil_{lo+k+1}; d[k] : Fil_{lo+k} -> Fil_{lo+k-1}.
  A1Module(Prime p, int lo, std::vector<Index> dims, std::vector<FpMatrix> x, std::vector<FpMatrix> d);
  /// Honest form: Fil_i = span(bases[i - lo]) in F_p^n, nested, the last one
  /// spanning F_p^n, and D_i = E + i restricted to Fil_i.
  static A1Module from_honest(Prime p, int lo, const std::vector<FpMatrix>& bases, const FpMatrix& e);

  Prime prime() const noexcept { return p_; }
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(dims_.size()) - 1; }
  Index dim(int i) const;
  FpMatrix x(int i) const;
  FpMatrix d(int i) const;

private:
  Prime p_;
  int lo_;
  std::vector<Index> dims_;
  std::vector<FpMatrix> x_, d_;
};

LawReport validate(const A1Module& m);
/// fib(Fil_0 -D-> Fil_{-1})
FpHomology coh_HTc(const A1Module& m);

/// The least multiple N of p with N >= max(hi, 0); Fil_N models M[1/x^p]_0.
int dR_level(const A1Module& m);
/// (Fil_N, Theta = x D).
ThetaModule restrict_HTc_to_dR(const A1Module& m);
/// gr_i = coker(x_{i-1}) with Theta = D^p.
GradedThetaModule restrict_HTc_to_Hod(const A1Module& m);

/// All x injective. Then V = Fil_hi and E = D_i - i is a single operator.
struct HonestA1 {
  int lo;
  std::vector<FpMatrix> bases;  // Fil_lo ... Fil_hi inside V
  FpMatrix e;
};
std::optional<HonestA1> honest_form(const A1Module& m);

/// Honest decreasing filtration Fil^lo = V ⊇ ... ⊇ Fil^hi on V = F_p^n with
/// Theta(Fil^i) ⊆ Fil^{i-p}.
class FilThetaModule {
public:
  FilThetaModule(Prime p, int lo, std::vector<FpMatrix> bases, FpMatrix theta);

  Prime prime() const noexcept { return p_; }
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(bases_.size()) - 1; }
  Index dim() const { return theta_.rows(); }
  /// Columns spanning Fil^i inside V.
  FpMatrix fil(int i) const;
  const FpMatrix& theta() const noexcept { return theta_; }

private:
  Prime p_;
  int lo_;
  std::vector<FpMatrix> bases_;
  FpMatrix theta_;
};

/// Nested subspaces, Theta(Fil^i) ⊆ Fil^{i-p}, and the fiberwise Rees
/// condition: Theta^p - Theta nilpotent on V, Theta^p nilpotent on gr.
LawReport validate(const FilThetaModule& m);
/// fib(Fil^0 -Theta-> Fil^{-p})
FpHomology coh_dRplus(const FilThetaModule& m);
ThetaModule restrict_dRplus_to_dR(const FilThetaModule& m);
GradedThetaModule restrict_dRplus_to_Hod(const FilThetaModule& m);

/// Glued datum. alpha_hod[i] : gr_i(htc) -> gr^i(drp) for every degree where
/// either side is nonzero.
struct ReducedFGauge {
  A1Module htc;
  FilThetaModule drp;
  FpMatrix alpha_dR;
  std::map<int, FpMatrix> alpha_hod;
};

/// Component laws plus invertibility and Theta-equivariance of the alphas.
LawReport validate(const ReducedFGauge& g);

/// Two-term complexes of the four strata and the maps out of the dR,+ and
/// HT,c pieces, the latter already composed with the alphas.
struct FpChainMap {
  FpMatrix f0, f1;
};
struct ReducedComponents {
  FpMatrix dR_plus, htc, dR, hod;
  FpChainMap a_dR, a_hod, b_dR, b_hod;
};
ReducedComponents reduced_components(const ReducedFGauge& g);

/// C^0 = S^0, C^1 = S^1 ⊕ T^0, C^2 = T^1 with S = F_{dR,+} ⊕ F_{HT,c},
/// T = F_dR ⊕ F_Hod and f = a - b : S -> T.
struct ReducedTotal {
  FpMatrix d0, d1;
};
ReducedTotal reduced_total_complex(const ReducedFGauge& g);

struct ReducedCohomology {
  Index h0 = 0, h1 = 0, h2 = 0;
  friend bool operator==(const ReducedCohomology&, const ReducedCohomology&) = default;
};
/// Throws LawViolation for invalid data.
ReducedCohomology reduced_syntomic_cohomology(const ReducedFGauge& g);

/// The Breuil-Kisin twist O{n}: Fil_i = F_p for i >= -n with D_i = i + n,
/// Fil^i = F_p for i <= -n with Theta = n, identity alphas.
ReducedFGauge bk_reduced(Prime p, int n);
ReducedFGauge zero_reduced(Prime p);

/// tensor and dual need honest HT,c data.
ReducedFGauge direct_sum(const ReducedFGauge& a, const ReducedFGauge& b);
ReducedFGauge tensor(const ReducedFGauge& a, const ReducedFGauge& b);
ReducedFGauge dual(const ReducedFGauge& g);

/// Equal windows, equal matrices, equal alphas.
bool same_structure(const ReducedFGauge& a, const ReducedFGauge& b);

}  // namespace gaugeworks
