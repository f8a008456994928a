// F-gauges over F_p as stabilizing u/t diagrams of finitely generated
// Z_(p)-modules, and the gauges of F-crystals at the point.
//
// Outside the window [lo, hi] the diagram is extended constantly: below lo,
// M^i = M^lo with t = id and u = p; above hi, M^i = M^hi with u = id and
// t = p.

#pragma once

#include <string>
#include <vector>

#include "gaugeworks/error.hpp"
#include "gaugeworks/fgmodule.hpp"
#include "gaugeworks/filphi.hpp"

namespace gaugeworks {

class FpGauge {
public:
  /// modules[k] = M^{lo+k}; t[k] : M^{lo+k+1} -> M^{lo+k}; u[k] : M^{lo+k} -> M^{lo+k+1};
  /// tau : M^hi -> M^lo. Throws PreconditionError on shape or prime mismatch.
  FpGauge(Prime p, int lo, std::vector<FGModule> modules, std::vector<ModuleMap> t,
          std::vector<ModuleMap> u, ModuleMap tau);

  Prime prime() const noexcept { return p_; }
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(modules_.size()) - 1; }

  const FGModule& module(int i) const;
  /// t_i : M^i -> M^{i-1}, for every i.
  ModuleMap t(int i) const;
  /// u_i : M^{i-1} -> M^i, for every i.
  ModuleMap u(int i) const;
  const ModuleMap& tau() const noexcept { return tau_; }

private:
  Prime p_;
  int lo_;
  std::vector<FGModule> modules_;
  std::vector<ModuleMap> t_, u_;
  ModuleMap tau_;
};

/// ut = p and tu = p inside the window, tau an isomorphism.
LawReport validate(const FpGauge& g);

/// Same gauge on a larger window.
FpGauge extend_window(const FpGauge& g, int lo, int hi);
FpGauge direct_sum(const FpGauge& a, const FpGauge& b);

/// Composite M^0 -> M^lo of t's, and M^0 -> M^hi of u's.
ModuleMap t_infinity(const FpGauge& g);
ModuleMap u_infinity(const FpGauge& g);

/// Homology of t^inf - tau u^inf : M^0 -> M^lo. Throws PreconditionError
/// if the window does not contain 0, LawViolation if g is invalid.
ModuleHomology syntomic_cohomology(const FpGauge& g);

/// Free part of M^lo over Q with phi = tau u^inf (t^inf)^{-1}.
PhiModule rational_realization(const FpGauge& g);

/// Sorted multiset of i with W_i = M^i / (p M^i + im u_i + im t_{i+1}) != 0,
/// each repeated dim W_i times.
std::vector<int> hodge_tate_weights(const FpGauge& g);

/// A free module of rank r with tau_crys : M -> M[1/p] invertible.
struct FCrystalPoint {
  FCrystalPoint(Prime p, QMatrix tau_crys);
  Prime p;
  QMatrix tau_crys;
  Index rank() const { return tau_crys.rows(); }
};

/// Columns spanning Fil^i M = {m : tau_crys m in p^i M}.
QMatrix nygaard_basis(const FCrystalPoint& c, int i);
FpGauge gauge_from_fcrystal(const FCrystalPoint& c);

/// Rank 1 crystal with tau = p^{-n}; its gauge realizes tate(n).
FCrystalPoint breuil_kisin_crystal(Prime p, int n);

/// tau_crys m in p^i M, by valuations of the entries.
bool in_nygaard(const FCrystalPoint& c, int i, const QMatrix& m);

/// Indices i in (lo, hi] where t_i mod p fails to be injective.
std::vector<int> mod_p_injectivity_failures(const FpGauge& g);


}  // namespace gaugeworks
