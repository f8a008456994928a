#include "gaugeworks/fgmodule.hpp"

#include <algorithm>
#include <sstream>

namespace gaugeworks {

FGModule::FGModule(int free_rank, std::vector<int> torsion_exponents)
    : free_rank_(free_rank), torsion_(std::move(torsion_exponents)) {
  if (free_rank_ < 0) throw PreconditionError("negative free rank");
  for (int e : torsion_)
    if (e <= 0) throw PreconditionError("torsion exponents must be positive");
  std::sort(torsion_.begin(), torsion_.end());
}

std::optional<int> FGModule::order_exponent(Index j) const {
  if (j < free_rank_) return std::nullopt;
  return torsion_.at(static_cast<std::size_t>(j - free_rank_));
}

std::string FGModule::describe() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank_ > 0) {
    os << "Z_(p)";
    if (free_rank_ > 1) os << "^" << free_rank_;
    first = false;
  }
  for (int e : torsion_) {
    if (!first) os << " + ";
    os << "Z/p";
    if (e > 1) os << "^" << e;
    first = false;
  }
  return os.str();
}

FGModule direct_sum(const FGModule& a, const FGModule& b) {
  std::vector<int> t = a.torsion();
  t.insert(t.end(), b.torsion().begin(), b.torsion().end());
  return FGModule(a.free_rank() + b.free_rank(), std::move(t));
}

namespace {

// Generator permutation taking (a-generators, b-generators) to the canonical
// order of direct_sum(a, b).
std::vector<Index> sum_order(const FGModule& a, const FGModule& b) {
  struct Gen {
    Index pos;
    int key;  // -1 for free
  };
  std::vector<Gen> gens;
  for (Index j = 0; j < a.generators(); ++j) gens.push_back({j, a.order_exponent(j).value_or(-1)});
  for (Index j = 0; j < b.generators(); ++j)
    gens.push_back({a.generators() + j, b.order_exponent(j).value_or(-1)});
  std::stable_sort(gens.begin(), gens.end(), [](const Gen& x, const Gen& y) { return x.key < y.key; });
  std::vector<Index> canonical_of(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k)
    canonical_of[static_cast<std::size_t>(gens[k].pos)] = static_cast<Index>(k);
  return canonical_of;
}

bool congruent(const Rational& a, const Rational& b, std::optional<int> order, Prime p) {
  const Rational diff = a - b;
  if (diff == 0) return true;
  if (!order) return false;
  return valuation(diff, p).value() >= *order;
}

}  // namespace

ModuleMap::ModuleMap(Prime p, FGModule source, FGModule target, QMatrix matrix)
    : p_(p), source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.generators() || matrix_.cols() != source_.generators())
    throw PreconditionError("module map matrix is " + std::to_string(matrix_.rows()) + "x" +
                            std::to_string(matrix_.cols()) + ", expected " +
                            std::to_string(target_.generators()) + "x" +
                            std::to_string(source_.generators()));
  require_p_local(matrix_, p_, "module map");
  for (Index j = 0; j < matrix_.cols(); ++j) {
    const auto src = source_.order_exponent(j);
    if (!src) continue;
    for (Index i = 0; i < matrix_.rows(); ++i) {
      const Rational killed = matrix_(i, j) * prime_power(p_, *src);
      if (!congruent(killed, 0, target_.order_exponent(i), p_))
        throw LawViolation("module map does not respect torsion: generator " + std::to_string(j) +
                           " of order p^" + std::to_string(*src) +
                           " has image of larger order in target component " +
                           std::to_string(i));
    }
  }
}

ModuleMap ModuleMap::identity(Prime p, const FGModule& m) {
  return ModuleMap(p, m, m, gaugeworks::identity<Rational>(m.generators()));
}

ModuleMap ModuleMap::zero(Prime p, const FGModule& source, const FGModule& target) {
  return ModuleMap(p, source, target, zeros<Rational>(target.generators(), source.generators()));
}

ModuleMap ModuleMap::scalar(Prime p, const FGModule& m, const Rational& c) {
  return ModuleMap(p, m, m, c * gaugeworks::identity<Rational>(m.generators()));
}

bool ModuleMap::equals(const ModuleMap& other) const {
  if (p_ != other.p_ || source_ != other.source_ || target_ != other.target_) return false;
  for (Index j = 0; j < matrix_.cols(); ++j)
    for (Index i = 0; i < matrix_.rows(); ++i)
      if (!congruent(matrix_(i, j), other.matrix_(i, j), target_.order_exponent(i), p_))
        return false;
  return true;
}

bool ModuleMap::is_zero() const {
  return equals(ModuleMap::zero(p_, source_, target_));
}

bool ModuleMap::is_isomorphism() const {
  const auto h = homology_two_term(*this);
  return h.h0.is_zero() && h.h1.is_zero();
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  require_same_prime(g.prime(), f.prime(), "compose");
  if (g.source() != f.target())
    throw PreconditionError("compose: source " + g.source().describe() + " != target " +
                            f.target().describe());
  return ModuleMap(f.prime(), f.source(), g.target(), g.matrix() * f.matrix());
}

ModuleMap operator+(const ModuleMap& a, const ModuleMap& b) {
  require_same_prime(a.prime(), b.prime(), "map sum");
  if (a.source() != b.source() || a.target() != b.target())
    throw PreconditionError("adding module maps with different source or target");
  return ModuleMap(a.prime(), a.source(), a.target(), a.matrix() + b.matrix());
}

ModuleMap operator-(const ModuleMap& a, const ModuleMap& b) {
  return a + Rational(-1) * b;
}

ModuleMap operator*(const Rational& c, const ModuleMap& f) {
  return ModuleMap(f.prime(), f.source(), f.target(), c * f.matrix());
}

ModuleMap block_sum(const ModuleMap& a, const ModuleMap& b) {
  require_same_prime(a.prime(), b.prime(), "block_sum");
  const auto src = sum_order(a.source(), b.source());
  const auto tgt = sum_order(a.target(), b.target());
  const FGModule s = direct_sum(a.source(), b.source());
  const FGModule t = direct_sum(a.target(), b.target());
  QMatrix m = zeros<Rational>(t.generators(), s.generators());
  for (Index j = 0; j < a.source().generators(); ++j)
    for (Index i = 0; i < a.target().generators(); ++i) m(tgt[i], src[j]) = a.matrix()(i, j);
  const Index as = a.source().generators(), at = a.target().generators();
  for (Index j = 0; j < b.source().generators(); ++j)
    for (Index i = 0; i < b.target().generators(); ++i)
      m(tgt[at + i], src[as + j]) = b.matrix()(i, j);
  return ModuleMap(a.prime(), s, t, m);
}

namespace {

// Diagonal relation matrix of a canonically presented module: one column
// p^e at each torsion generator.
QMatrix relations(const FGModule& m, Prime p) {
  QMatrix r = zeros<Rational>(m.generators(), static_cast<Index>(m.torsion().size()));
  for (std::size_t k = 0; k < m.torsion().size(); ++k)
    r(m.free_rank() + static_cast<Index>(k), static_cast<Index>(k)) = prime_power(p, m.torsion()[k]);
  return r;
}

// Z_(p)^n / span(columns of rel), read off the Smith form of rel.
FGModule quotient(Index n, const QMatrix& rel, Prime p) {
  const SmithForm s = smith_normal_form(rel, p);
  std::vector<int> torsion;
  for (int e : s.exponents)
    if (e > 0) torsion.push_back(e);
  return FGModule(static_cast<int>(n - s.rank()), torsion);
}

}  // namespace

ModuleHomology homology_two_term(const TwoTermComplex& c) {
  const ModuleMap& f = c.d;
  const Prime p = f.prime();
  const Index k = f.source().generators();
  const Index m = f.target().generators();
  const QMatrix rb = relations(f.target(), p);
  const QMatrix ra = relations(f.source(), p);

  QMatrix g(m, k + rb.cols());
  g << f.matrix(), rb;

  ModuleHomology out;
  out.h1 = quotient(m, g, p);

  // {x : f x ∈ im rb} is a lattice L containing im ra; ker f = L / im ra.
  const SmithForm sg = smith_normal_form(g, p);
  const QMatrix gens = sg.v.rightCols(g.cols() - sg.rank()).topRows(k);
  const SmithForm sl = smith_normal_form(gens, p);
  const QMatrix uinv = inverse<Rational>(sl.u);
  QMatrix basis(k, sl.rank());
  for (Index j = 0; j < sl.rank(); ++j)
    basis.col(j) = uinv.col(j) * prime_power(p, sl.exponents[static_cast<std::size_t>(j)]);
  const QMatrix rel_in_basis = coordinates<Rational>(basis, ra);
  out.h0 = quotient(basis.cols(), rel_in_basis, p);
  return out;
}

FpHomology fp_homology_two_term(const FpMatrix& d) {
  const Index r = rank(d);
  return {d.cols() - r, d.rows() - r};
}

}  // namespace gaugeworks
