// The fibre square relating filtered phi-modules to their phi-module,
// Hodge-filtered and de Rham pieces, checked through total complexes.

#pragma once

#include <array>
#include <optional>

#include "gaugeworks/filphi.hpp"

namespace gaugeworks {

/// C^0 -d-> C^1.
struct CochainComplex {
  QMatrix d;
  Index dim0() const { return d.cols(); }
  Index dim1() const { return d.rows(); }
  static CochainComplex in_degree_zero(Index n) { return {zeros<Rational>(0, n)}; }
};

struct ChainMap {
  QMatrix f0, f1;
};

struct CohomologyDims {
  Index h0 = 0, h1 = 0;
  friend bool operator==(const CohomologyDims&, const CohomologyDims&) = default;
};

CohomologyDims cohomology_dims(const CochainComplex& c);
/// Throws LawViolation unless f is a chain map c -> e.
void check_chain_map(const ChainMap& f, const CochainComplex& c, const CochainComplex& e);

//   A ---> B
//   |      |
//   C ---> D
struct SquareData {
  CochainComplex a, b, c, d;
  ChainMap a_to_b, a_to_c, b_to_d, c_to_d;
};

/// A = Fil^0 -(iota - phi iota)-> D,  B = Fil^0,  C = D -(1 - phi)-> D,  D = D.
SquareData corners(const FilteredPhiModule& d);

struct CartesianReport {
  Index commutativity_defect = 0;  // rank of b_to_d a_to_b - c_to_d a_to_c in each degree, summed
  /// Cohomology dimensions of Tot(A -> B ⊕ C -> D) in degrees 0..3; absent
  /// when the square does not commute.
  std::optional<std::array<Index, 4>> total_cohomology;
  bool is_zero() const;
};

CartesianReport verify_cartesian(const SquareData& s);

/// Negative control: drops the last basis vector of B^0 and adjusts the maps
/// through B accordingly. Throws PreconditionError if B^0 = 0.
SquareData corrupt_corner_b(const SquareData& s);

/// Cohomology of Fil^0 -(1 - phi)-> D, by fraction-free elimination.
struct FMFibre {
  QMatrix h0_in_fil0;
  Index h1_dim = 0;
  Index h0_dim() const { return h0_in_fil0.cols(); }
};

FMFibre fm_fibre(const FilteredPhiModule& d);

}  // namespace gaugeworks
