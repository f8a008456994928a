// Filtered phi-modules over Q_p at the arithmetic point, realized over the
// rationals: phi-modules, filtered spaces (honest or not), and their
// crystalline RHom.
//
// Twist convention: tate(n) has phi = p^{-n} and its single filtration jump
// at -n, so its Hodge-Tate weight is -n.

#pragma once

#include <vector>

#include "gaugeworks/linalg.hpp"

namespace gaugeworks {

/// A rational vector space with an automorphism.
class PhiModule {
public:
  PhiModule(Prime p, QMatrix frobenius);

  Prime prime() const noexcept { return p_; }
  Index dim() const noexcept { return frobenius_.rows(); }
  const QMatrix& frobenius() const noexcept { return frobenius_; }

private:
  Prime p_;
  QMatrix frobenius_;
};

/// A decreasing diagram ... -> space_{i+1} -> space_i -> ... of rational
/// vector spaces over the window [lo, hi]. Outside the window,
/// space_i = space_lo for i < lo (identity transitions) and space_i = 0 for
/// i > hi. Transitions need not be injective; when they all are, the
/// filtration is honest and space_i is a subspace of space_lo.
class FilteredSpace {
public:
  /// transitions[k] : space_{lo+k+1} -> space_{lo+k}, a dims[k] x dims[k+1] matrix.
  FilteredSpace(int lo, std::vector<Index> dims, std::vector<QMatrix> transitions);

  /// Honest filtration on Q^n from nested subspaces: bases[k] spans
  /// Fil^{lo+k} (columns in Q^n); bases[0] must span Q^n.
  static FilteredSpace from_subspaces(Index n, int lo, const std::vector<QMatrix>& bases);
  /// Fil^i = Q^n for i <= jump, 0 above.
  static FilteredSpace single_jump(Index n, int jump);

  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(dims_.size()) - 1; }
  Index dim(int i) const;
  Index underlying_dim() const { return dims_.front(); }

  /// space_{i+1} -> space_i, including the boundary conventions.
  QMatrix transition(int i) const;
  /// Composite space_i -> space_lo.
  QMatrix to_underlying(int i) const;

  bool is_honest() const;
  /// Column basis of the image of space_i in space_lo. For honest
  /// filtrations this is Fil^i as a subspace.
  QMatrix subspace(int i) const;

private:
  int lo_;
  std::vector<Index> dims_;
  std::vector<QMatrix> transitions_;
};

class FilteredPhiModule {
public:
  FilteredPhiModule(Prime p, FilteredSpace filtration, QMatrix frobenius);

  Prime prime() const noexcept { return p_; }
  const FilteredSpace& filtration() const noexcept { return filtration_; }
  const QMatrix& frobenius() const noexcept { return frobenius_; }
  Index dim() const noexcept { return frobenius_.rows(); }
  PhiModule phi_module() const { return PhiModule(p_, frobenius_); }

  /// Fil^0 -> D.
  QMatrix fil0_inclusion() const { return filtration_.to_underlying(0); }
  Index fil0_dim() const { return filtration_.dim(0); }

private:
  Prime p_;
  FilteredSpace filtration_;
  QMatrix frobenius_;
};

/// Cohomology of D -(phi - 1)-> D.
struct PhiCohomology {
  QMatrix h0;  // basis of ker(phi - 1) in D
  QMatrix h1;  // vectors of D whose classes form a basis of coker(phi - 1)
  Index h0_dim() const { return h0.cols(); }
  Index h1_dim() const { return h1.cols(); }
};

PhiCohomology rhom_phi(const PhiModule& m);

/// RHom(1, D) in MF^phi, computed as the fibre of D^{phi=1} -> D/Fil^0.
struct MFPhiCohomology {
  QMatrix h0_in_fil0;  // basis of H^0 as a subspace of Fil^0
  QMatrix h0;          // its image in D (a basis of the image)
  QMatrix h1;          // representatives in D ⊕ D of a basis of H^1
  Index h0_dim() const { return h0_in_fil0.cols(); }
  Index h1_dim() const { return h1.cols(); }
};

MFPhiCohomology rhom_mfphi(const FilteredPhiModule& d);

FilteredPhiModule tate(Prime p, int n);

/// v_p(det phi).
int newton_number(const FilteredPhiModule& d);
/// sum_i i dim gr^i. Throws PreconditionError for non-honest filtrations.
int hodge_number(const FilteredPhiModule& d);
/// Hodge number of the filtration induced on the subspace spanned by w.
int hodge_number_of_subspace(const FilteredPhiModule& d, const QMatrix& w);

enum class Admissibility { admissible, not_admissible, undecided };
const char* to_string(Admissibility a);

/// Numerical weak admissibility. Decided exactly when phi has pairwise
/// distinct rational eigenvalues (every phi-stable subspace is then a sum of
/// eigenlines); otherwise undecided. Throws for non-honest filtrations.
Admissibility is_weakly_admissible(const FilteredPhiModule& d);

/// The remaining operations require honest filtrations.
FilteredPhiModule direct_sum(const FilteredPhiModule& a, const FilteredPhiModule& b);
FilteredPhiModule tensor(const FilteredPhiModule& a, const FilteredPhiModule& b);
FilteredPhiModule dual(const FilteredPhiModule& d);
FilteredPhiModule internal_hom(const FilteredPhiModule& a, const FilteredPhiModule& b);

/// Same Frobenius matrix and same filtration subspaces at every index.
bool same_structure(const FilteredPhiModule& a, const FilteredPhiModule& b);

/// Characteristic polynomial coefficients c_0..c_n (c_n = 1) of a square
/// rational matrix.
std::vector<Rational> characteristic_polynomial(const QMatrix& m);
/// Distinct rational roots, with multiplicities, when the coefficients are
/// small enough to enumerate candidates; nullopt otherwise.
std::optional<std::vector<std::pair<Rational, int>>> rational_roots(const std::vector<Rational>& poly);

}  // namespace gaugeworks
