// Graded F_p spaces with commuting degree-lowering Higgs fields, and the
// Koszul-type complexes computing their cohomology in a fixed degree.

#pragma once

#include <utility>
#include <vector>

#include "gaugeworks/error.hpp"
#include "gaugeworks/linalg.hpp"

namespace gaugeworks {

/// V_i for i in [lo, lo + dims.size()), zero elsewhere, with d fields
/// phi_k : V_i -> V_{i-1}. phi[k][j] is the matrix on V_{lo+j}.
class GradedHiggsModule {
public:
  GradedHiggsModule(Prime p, int d, int lo, std::vector<Index> dims, std::vector<std::vector<FpMatrix>> phi);
  /// All fields zero.
  static GradedHiggsModule trivial(Prime p, int d, int lo, std::vector<Index> dims);

  Prime prime() const noexcept { return p_; }
  int directions() const noexcept { return d_; }
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(dims_.size()) - 1; }
  Index dim(int i) const;
  Index total_dim() const;
  /// phi_k on V_i, k in [0, d); zero outside the support.
  FpMatrix phi(int k, int i) const;

private:
  Prime p_;
  int d_, lo_;
  std::vector<Index> dims_;
  std::vector<std::vector<FpMatrix>> phi_;
};

/// Commutators phi_j phi_k = phi_k phi_j and joint nilpotence of the fields.
LawReport check_higgs(const GradedHiggsModule& m);

/// Differentials of Tot(V_i -> V_{i-1} ⊗ Ω^1 -> ... -> V_{i-d} ⊗ Ω^d); the
/// term in degree k has one block V_{i-k} per k-subset of {0..d-1}, in
/// lexicographic order.
std::vector<FpMatrix> koszul_differentials(const GradedHiggsModule& m, int i);

/// (k, dim H^k) for k = 0..d. Throws LawViolation for invalid fields.
std::vector<std::pair<int, Index>> hodge_cohomology(const GradedHiggsModule& m, int i);

}  // namespace gaugeworks
