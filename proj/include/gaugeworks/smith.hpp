// Smith normal form over the discrete valuation ring Z_(p).

#pragma once

#include <vector>

#include "gaugeworks/linalg.hpp"

namespace gaugeworks {

/// u * m * v == d with u, v invertible over Z_(p). The diagonal of d is
/// p^exponents[0], ..., p^exponents[rank-1], 0, ..., 0 and the exponents
/// are weakly increasing.
struct SmithForm {
  QMatrix u;
  QMatrix d;
  QMatrix v;
  std::vector<int> exponents;

  Index rank() const { return static_cast<Index>(exponents.size()); }
};

/// Total on p-local input; throws LawViolation if an entry has p in its
/// denominator.
SmithForm smith_normal_form(const QMatrix& m, Prime p);

/// Elementary divisor valuations of an arbitrary rational matrix, i.e. the
/// exponents k_i with m ~ diag(p^{k_i}) over Z_(p); may be negative.
std::vector<int> smith_valuations(const QMatrix& m, Prime p);

void require_p_local(const QMatrix& m, Prime p, const char* what);

}  // namespace gaugeworks
