#include "gaugeworks/filphi.hpp"

#include <algorithm>
#include <set>

namespace gaugeworks {

PhiModule::PhiModule(Prime p, QMatrix frobenius) : p_(p), frobenius_(std::move(frobenius)) {
  if (!is_invertible(frobenius_)) throw LawViolation("phi must be invertible: det(phi) = 0");
}

// ---- FilteredSpace ----

FilteredSpace::FilteredSpace(int lo, std::vector<Index> dims, std::vector<QMatrix> transitions)
    : lo_(lo), dims_(std::move(dims)), transitions_(std::move(transitions)) {
  if (dims_.empty()) throw PreconditionError("filtration window is empty");
  if (transitions_.size() + 1 != dims_.size())
    throw PreconditionError("filtration needs one transition per adjacent pair of indices");
  for (std::size_t k = 0; k < transitions_.size(); ++k)
    if (transitions_[k].rows() != dims_[k] || transitions_[k].cols() != dims_[k + 1])
      throw PreconditionError("transition Fil^" + std::to_string(lo_ + static_cast<int>(k) + 1) +
                              " -> Fil^" + std::to_string(lo_ + static_cast<int>(k)) +
                              " has the wrong shape");
}

FilteredSpace FilteredSpace::from_subspaces(Index n, int lo, const std::vector<QMatrix>& bases) {
  if (bases.empty() || bases.front().rows() != n || rank(bases.front()) != n)
    throw PreconditionError("the lowest filtration step must be the whole space");
  std::vector<QMatrix> coords{identity<Rational>(n)};
  for (std::size_t k = 1; k < bases.size(); ++k) coords.push_back(column_space(bases[k]));
  std::vector<Index> dims;
  std::vector<QMatrix> transitions;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    dims.push_back(coords[k].cols());
    if (k == 0) continue;
    auto t = solve<Rational>(coords[k - 1], coords[k]);
    if (!t) throw LawViolation("filtration is not decreasing at index " + std::to_string(lo + static_cast<int>(k)));
    transitions.push_back(*t);
  }
  return FilteredSpace(lo, std::move(dims), std::move(transitions));
}

FilteredSpace FilteredSpace::single_jump(Index n, int jump) {
  return FilteredSpace(jump, {n}, {});
}

Index FilteredSpace::dim(int i) const {
  if (i < lo_) return dims_.front();
  if (i > hi()) return 0;
  return dims_[static_cast<std::size_t>(i - lo_)];
}

QMatrix FilteredSpace::transition(int i) const {
  if (i < lo_) return identity<Rational>(dims_.front());
  if (i >= hi()) return zeros<Rational>(dim(i), 0);
  return transitions_[static_cast<std::size_t>(i - lo_)];
}

QMatrix FilteredSpace::to_underlying(int i) const {
  if (i <= lo_) return identity<Rational>(dims_.front()).leftCols(dim(i));
  QMatrix m = identity<Rational>(dim(i));
  for (int j = i - 1; j >= lo_; --j) m = (transition(j) * m).eval();
  return m;
}

bool FilteredSpace::is_honest() const {
  for (const auto& t : transitions_)
    if (rank(t) != t.cols()) return false;
  return true;
}

QMatrix FilteredSpace::subspace(int i) const { return column_space(to_underlying(i)); }

// ---- FilteredPhiModule ----

FilteredPhiModule::FilteredPhiModule(Prime p, FilteredSpace filtration, QMatrix frobenius)
    : p_(p), filtration_(std::move(filtration)), frobenius_(std::move(frobenius)) {
  if (frobenius_.rows() != frobenius_.cols() || frobenius_.rows() != filtration_.underlying_dim())
    throw PreconditionError("phi must be a square matrix on the underlying space of the filtration");
  if (!is_invertible(frobenius_)) throw LawViolation("phi must be invertible: det(phi) = 0");
}

namespace {

void require_honest(const FilteredPhiModule& d, const char* op) {
  if (!d.filtration().is_honest())
    throw PreconditionError(std::string(op) +
                            " needs an honest filtration (injective transitions); gr is "
                            "presentation-dependent otherwise");
}

}  // namespace

PhiCohomology rhom_phi(const PhiModule& m) {
  const QMatrix d = m.frobenius() - identity<Rational>(m.dim());
  return {kernel(d), cokernel_complement(d)};
}

MFPhiCohomology rhom_mfphi(const FilteredPhiModule& d) {
  // fib(D^{phi=1} -> D/Fil^0) as a total complex:
  //   C^0 = D ⊕ Fil^0 -> C^1 = D ⊕ D,  (x, y) |-> ((1 - phi) x, x - iota y)
  const Index n = d.dim(), f = d.fil0_dim();
  const QMatrix iota = d.fil0_inclusion();
  QMatrix diff = zeros<Rational>(2 * n, n + f);
  diff.topLeftCorner(n, n) = identity<Rational>(n) - d.frobenius();
  diff.bottomLeftCorner(n, n) = identity<Rational>(n);
  diff.bottomRightCorner(n, f) = -iota;

  MFPhiCohomology out;
  const QMatrix k = kernel(diff);
  out.h0_in_fil0 = k.bottomRows(f);
  out.h0 = column_space(QMatrix(k.topRows(n)));
  out.h1 = cokernel_complement(diff);
  return out;
}

FilteredPhiModule tate(Prime p, int n) {
  QMatrix phi(1, 1);
  phi(0, 0) = prime_power(p, -n);
  return FilteredPhiModule(p, FilteredSpace::single_jump(1, -n), phi);
}

int newton_number(const FilteredPhiModule& d) {
  if (d.dim() == 0) return 0;
  return valuation(determinant(d.frobenius()), d.prime()).value();
}

int hodge_number_of_subspace(const FilteredPhiModule& d, const QMatrix& w) {
  require_honest(d, "hodge_number");
  const auto& fil = d.filtration();
  const QMatrix wb = column_space(w);
  int total = fil.lo() * static_cast<int>(wb.cols());
  // sum_i i dim gr^i(W) = lo dim W + sum_{i > lo} dim(W ∩ Fil^i)
  for (int i = fil.lo() + 1; i <= fil.hi(); ++i)
    total += static_cast<int>(subspace_intersection<Rational>(wb, fil.subspace(i)).cols());
  return total;
}

int hodge_number(const FilteredPhiModule& d) {
  return hodge_number_of_subspace(d, identity<Rational>(d.dim()));
}

const char* to_string(Admissibility a) {
  switch (a) {
    case Admissibility::admissible: return "admissible";
    case Admissibility::not_admissible: return "not admissible";
    case Admissibility::undecided: return "undecided";
  }
  return "?";
}

std::vector<Rational> characteristic_polynomial(const QMatrix& a) {
  // Faddeev-LeVerrier
  const Index n = a.rows();
  std::vector<Rational> c(static_cast<std::size_t>(n + 1), Rational(0));
  c[static_cast<std::size_t>(n)] = 1;
  QMatrix m = zeros<Rational>(n, n);
  for (Index k = 1; k <= n; ++k) {
    m = (a * m).eval();
    for (Index i = 0; i < n; ++i) m(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    const QMatrix am = a * m;
    Rational tr = 0;
    for (Index i = 0; i < n; ++i) tr += am(i, i);
    c[static_cast<std::size_t>(n - k)] = -tr / Rational(k);
  }
  return c;
}

namespace {

constexpr std::int64_t kDivisorLimit = 1'000'000'000'000LL;

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

Rational evaluate(const std::vector<Rational>& poly, const Rational& x) {
  Rational acc = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<Rational> deflate(const std::vector<Rational>& poly, const Rational& root) {
  // synthetic division by (x - root)
  std::vector<Rational> q(poly.size() - 1);
  Rational carry = 0;
  for (std::size_t k = poly.size() - 1; k > 0; --k) {
    carry = carry * root + poly[k];
    q[k - 1] = carry;
  }
  return q;
}

}  // namespace

std::optional<std::vector<std::pair<Rational, int>>> rational_roots(const std::vector<Rational>& poly_in) {
  std::vector<Rational> poly = poly_in;
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  if (poly.empty()) return std::nullopt;
  std::vector<std::pair<Rational, int>> roots;
  int zero_mult = 0;
  while (poly.size() > 1 && poly.front() == 0) {
    poly.erase(poly.begin());
    ++zero_mult;
  }
  if (zero_mult) roots.emplace_back(Rational(0), zero_mult);
  if (poly.size() == 1) return roots;

  Integer l = 1;
  for (const auto& c : poly) l = lcm(l, Integer(denominator(c)));
  std::vector<Integer> ints;
  for (const auto& c : poly) ints.push_back(Integer(numerator(c)) * (l / Integer(denominator(c))));
  const Integer a0 = abs(ints.front()), an = abs(ints.back());
  if (a0 > kDivisorLimit || an > kDivisorLimit) return std::nullopt;

  std::set<Rational> candidates;
  for (auto num : divisors(a0.convert_to<std::int64_t>()))
    for (auto den : divisors(an.convert_to<std::int64_t>())) {
      candidates.insert(Rational(num, den));
      candidates.insert(Rational(-num, den));
    }
  for (const auto& r : candidates) {
    int mult = 0;
    while (poly.size() > 1 && evaluate(poly, r) == 0) {
      poly = deflate(poly, r);
      ++mult;
    }
    if (mult) roots.emplace_back(r, mult);
  }
  return roots;
}

Admissibility is_weakly_admissible(const FilteredPhiModule& d) {
  require_honest(d, "is_weakly_admissible");
  const Index n = d.dim();
  if (n == 0) return Admissibility::admissible;
  const auto roots = rational_roots(characteristic_polynomial(d.frobenius()));
  if (!roots || static_cast<Index>(roots->size()) != n) return Admissibility::undecided;

  std::vector<QMatrix> lines;
  std::vector<int> slopes;
  for (const auto& [lambda, mult] : *roots) {
    lines.push_back(kernel(QMatrix(d.frobenius() - lambda * identity<Rational>(n))));
    slopes.push_back(valuation(lambda, d.prime()).value());
  }
  if (newton_number(d) != hodge_number(d)) return Admissibility::not_admissible;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    QMatrix w(n, 0);
    int newton = 0;
    for (Index k = 0; k < n; ++k)
      if (mask >> k & 1u) {
        QMatrix next(n, w.cols() + 1);
        next << w, lines[static_cast<std::size_t>(k)];
        w = next;
        newton += slopes[static_cast<std::size_t>(k)];
      }
    if (hodge_number_of_subspace(d, w) > newton) return Admissibility::not_admissible;
  }
  return Admissibility::admissible;
}

namespace {

// Rebuild an honest filtered space on Q^n from subspaces over [lo, hi].
FilteredSpace honest_from(Index n, int lo, int hi, auto&& subspace_at) {
  std::vector<QMatrix> bases;
  bases.push_back(identity<Rational>(n));
  for (int i = lo + 1; i <= hi; ++i) bases.push_back(subspace_at(i));
  return FilteredSpace::from_subspaces(n, lo, bases);
}

}  // namespace

FilteredPhiModule direct_sum(const FilteredPhiModule& a, const FilteredPhiModule& b) {
  require_same_prime(a.prime(), b.prime(), "direct_sum");
  require_honest(a, "direct_sum");
  require_honest(b, "direct_sum");
  const auto& fa = a.filtration();
  const auto& fb = b.filtration();
  const int lo = std::min(fa.lo(), fb.lo()), hi = std::max(fa.hi(), fb.hi());
  const Index n = a.dim() + b.dim();
  auto fil = honest_from(n, lo, hi, [&](int i) {
    return block_diagonal<Rational>(fa.subspace(i), fb.subspace(i));
  });
  return FilteredPhiModule(a.prime(), std::move(fil), block_diagonal<Rational>(a.frobenius(), b.frobenius()));
}

FilteredPhiModule tensor(const FilteredPhiModule& a, const FilteredPhiModule& b) {
  require_same_prime(a.prime(), b.prime(), "tensor");
  require_honest(a, "tensor");
  require_honest(b, "tensor");
  const auto& fa = a.filtration();
  const auto& fb = b.filtration();
  const Index n = a.dim() * b.dim();
  const int lo = fa.lo() + fb.lo(), hi = std::max(lo, fa.hi() + fb.hi());
  auto fil = honest_from(n, lo, hi, [&](int k) {
    QMatrix acc(n, 0);
    for (int i = fa.lo(); i <= fa.hi(); ++i) {
      const QMatrix piece = kronecker<Rational>(fa.subspace(i), fb.subspace(k - i));
      if (piece.cols() > 0) acc = subspace_sum<Rational>(acc, piece);
    }
    return acc;
  });
  return FilteredPhiModule(a.prime(), std::move(fil), kronecker<Rational>(a.frobenius(), b.frobenius()));
}

FilteredPhiModule dual(const FilteredPhiModule& d) {
  require_honest(d, "dual");
  const auto& f = d.filtration();
  const Index n = d.dim();
  auto fil = honest_from(n, -f.hi(), -f.lo(), [&](int k) {
    // annihilator of Fil^{1-k}
    return kernel(QMatrix(f.subspace(1 - k).transpose()));
  });
  return FilteredPhiModule(d.prime(), std::move(fil),
                           QMatrix(inverse<Rational>(d.frobenius()).transpose()));
}

FilteredPhiModule internal_hom(const FilteredPhiModule& a, const FilteredPhiModule& b) {
  return tensor(dual(a), b);
}

bool same_structure(const FilteredPhiModule& a, const FilteredPhiModule& b) {
  if (a.prime() != b.prime() || a.dim() != b.dim() || a.frobenius() != b.frobenius()) return false;
  const auto& fa = a.filtration();
  const auto& fb = b.filtration();
  if (fa.is_honest() != fb.is_honest()) return false;
  const int lo = std::min(fa.lo(), fb.lo()) - 1, hi = std::max(fa.hi(), fb.hi()) + 1;
  for (int i = lo; i <= hi; ++i) {
    if (fa.dim(i) != fb.dim(i)) return false;
    if (fa.is_honest()) {
      if (!same_span<Rational>(fa.subspace(i), fb.subspace(i))) return false;
    } else if (fa.transition(i) != fb.transition(i)) {
      return false;
    }
  }
  return true;
}

}  // namespace gaugeworks
