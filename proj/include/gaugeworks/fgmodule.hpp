// Finitely generated Z_(p)-modules, maps between them, and homology of
// two-term complexes.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaugeworks/smith.hpp"

namespace gaugeworks {

/// Z_(p)^free_rank ⊕ ⊕_i Z/p^{torsion[i]}, torsion weakly increasing and
/// positive. The canonical presentation orders generators free-first, then
/// by increasing torsion exponent; ModuleMap matrices use that order.
class FGModule {
public:
  FGModule() = default;
  FGModule(int free_rank, std::vector<int> torsion_exponents);

  static FGModule free(int rank) { return FGModule(rank, {}); }
  static FGModule cyclic(int exponent) { return FGModule(0, {exponent}); }

  int free_rank() const noexcept { return free_rank_; }
  const std::vector<int>& torsion() const noexcept { return torsion_; }
  Index generators() const noexcept {
    return free_rank_ + static_cast<Index>(torsion_.size());
  }
  /// Exponent e of the order p^e of generator j, nullopt if free.
  std::optional<int> order_exponent(Index j) const;
  bool is_zero() const noexcept { return generators() == 0; }
  bool is_free() const noexcept { return torsion_.empty(); }

  std::string describe() const;

  friend bool operator==(const FGModule&, const FGModule&) = default;

private:
  int free_rank_ = 0;
  std::vector<int> torsion_;
};

FGModule direct_sum(const FGModule& a, const FGModule& b);

/// A homomorphism between canonically presented modules. Column j is the
/// image of source generator j. The constructor enforces that entries are
/// p-local and that p^e kills the image of a generator of order p^e.
class ModuleMap {
public:
  ModuleMap(Prime p, FGModule source, FGModule target, QMatrix matrix);

  static ModuleMap identity(Prime p, const FGModule& m);
  static ModuleMap zero(Prime p, const FGModule& source, const FGModule& target);
  /// Multiplication by c on m.
  static ModuleMap scalar(Prime p, const FGModule& m, const Rational& c);

  Prime prime() const noexcept { return p_; }
  const FGModule& source() const noexcept { return source_; }
  const FGModule& target() const noexcept { return target_; }
  const QMatrix& matrix() const noexcept { return matrix_; }

  /// Equality as homomorphisms: entries compared modulo the target orders.
  bool equals(const ModuleMap& other) const;
  bool is_zero() const;
  bool is_isomorphism() const;

private:
  Prime p_;
  FGModule source_;
  FGModule target_;
  QMatrix matrix_;
};

/// g ∘ f
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
ModuleMap operator+(const ModuleMap& a, const ModuleMap& b);
ModuleMap operator-(const ModuleMap& a, const ModuleMap& b);
ModuleMap operator*(const Rational& c, const ModuleMap& f);
ModuleMap block_sum(const ModuleMap& a, const ModuleMap& b);

/// d placed in degrees 0 -> 1.
struct TwoTermComplex {
  ModuleMap d;
};

struct ModuleHomology {
  FGModule h0;  // kernel
  FGModule h1;  // cokernel
  friend bool operator==(const ModuleHomology&, const ModuleHomology&) = default;
};

ModuleHomology homology_two_term(const TwoTermComplex& c);
inline ModuleHomology homology_two_term(const ModuleMap& d) {
  return homology_two_term(TwoTermComplex{d});
}

struct FpHomology {
  Index h0;  // nullity
  Index h1;  // corank
  friend bool operator==(const FpHomology&, const FpHomology&) = default;
};

FpHomology fp_homology_two_term(const FpMatrix& d);

}  // namespace gaugeworks
