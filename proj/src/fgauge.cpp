#include "gaugeworks/fgauge.hpp"

#include <algorithm>

#include "gaugeworks/error.hpp"

namespace gaugeworks {

namespace {

void require_map(const ModuleMap& f, Prime p, const FGModule& s, const FGModule& t, const std::string& what) {
  require_same_prime(p, f.prime(), "FpGauge");
  if (f.source() != s || f.target() != t)
    throw PreconditionError("FpGauge: " + what + " has source " + f.source().describe() + " and target " +
                            f.target().describe() + ", expected " + s.describe() + " -> " + t.describe());
}

}  // namespace

FpGauge::FpGauge(Prime p, int lo, std::vector<FGModule> modules, std::vector<ModuleMap> t,
                 std::vector<ModuleMap> u, ModuleMap tau)
    : p_(p), lo_(lo), modules_(std::move(modules)), t_(std::move(t)), u_(std::move(u)), tau_(std::move(tau)) {
  if (modules_.empty()) throw PreconditionError("FpGauge: empty window");
  const std::size_t steps = modules_.size() - 1;
  if (t_.size() != steps || u_.size() != steps)
    throw PreconditionError("FpGauge: need one t and one u per step of the window");
  for (std::size_t k = 0; k < steps; ++k) {
    const int i = lo_ + static_cast<int>(k) + 1;
    require_map(t_[k], p_, modules_[k + 1], modules_[k], "t_" + std::to_string(i));
    require_map(u_[k], p_, modules_[k], modules_[k + 1], "u_" + std::to_string(i));
  }
  require_map(tau_, p_, modules_.back(), modules_.front(), "tau");
}

const FGModule& FpGauge::module(int i) const {
  const int k = std::clamp(i - lo_, 0, static_cast<int>(modules_.size()) - 1);
  return modules_[static_cast<std::size_t>(k)];
}

ModuleMap FpGauge::t(int i) const {
  if (i <= lo_) return ModuleMap::identity(p_, modules_.front());
  if (i > hi()) return ModuleMap::scalar(p_, modules_.back(), Rational(p_.value()));
  return t_[static_cast<std::size_t>(i - lo_ - 1)];
}

ModuleMap FpGauge::u(int i) const {
  if (i <= lo_) return ModuleMap::scalar(p_, modules_.front(), Rational(p_.value()));
  if (i > hi()) return ModuleMap::identity(p_, modules_.back());
  return u_[static_cast<std::size_t>(i - lo_ - 1)];
}

LawReport validate(const FpGauge& g) {
  LawReport r;
  const Rational p(g.prime().value());
  for (int i = g.lo() + 1; i <= g.hi(); ++i) {
    const std::string at = "ut = tu = p failed at index " + std::to_string(i);
    if (!compose(g.u(i), g.t(i)).equals(ModuleMap::scalar(g.prime(), g.module(i), p)))
      r.violations.push_back(at + " (u t on M^" + std::to_string(i) + ")");
    if (!compose(g.t(i), g.u(i)).equals(ModuleMap::scalar(g.prime(), g.module(i - 1), p)))
      r.violations.push_back(at + " (t u on M^" + std::to_string(i - 1) + ")");
  }
  if (!g.tau().is_isomorphism()) r.violations.push_back("tau is not an isomorphism");
  return r;
}

namespace {

void require_valid(const FpGauge& g, const char* what) { validate(g).require(what); }

}  // namespace

FpGauge extend_window(const FpGauge& g, int lo, int hi) {
  if (lo > g.lo() || hi < g.hi()) throw PreconditionError("extend_window: window must grow");
  std::vector<FGModule> modules;
  std::vector<ModuleMap> t, u;
  for (int i = lo; i <= hi; ++i) {
    modules.push_back(g.module(i));
    if (i > lo) {
      t.push_back(g.t(i));
      u.push_back(g.u(i));
    }
  }
  return FpGauge(g.prime(), lo, std::move(modules), std::move(t), std::move(u), g.tau());
}

FpGauge direct_sum(const FpGauge& a, const FpGauge& b) {
  require_same_prime(a.prime(), b.prime(), "direct_sum");
  const int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  const FpGauge ea = extend_window(a, lo, hi), eb = extend_window(b, lo, hi);
  std::vector<FGModule> modules;
  std::vector<ModuleMap> t, u;
  for (int i = lo; i <= hi; ++i) {
    modules.push_back(direct_sum(ea.module(i), eb.module(i)));
    if (i > lo) {
      t.push_back(block_sum(ea.t(i), eb.t(i)));
      u.push_back(block_sum(ea.u(i), eb.u(i)));
    }
  }
  return FpGauge(a.prime(), lo, std::move(modules), std::move(t), std::move(u), block_sum(ea.tau(), eb.tau()));
}

namespace {

void require_zero_in_window(const FpGauge& g, const char* what) {
  if (g.lo() > 0 || g.hi() < 0)
    throw PreconditionError(std::string(what) + ": window [" + std::to_string(g.lo()) + ", " +
                            std::to_string(g.hi()) + "] does not contain 0; extend it first");
}

FpGauge with_zero(const FpGauge& g) {
  return extend_window(g, std::min(g.lo(), 0), std::max(g.hi(), 0));
}

}  // namespace

ModuleMap t_infinity(const FpGauge& g) {
  require_zero_in_window(g, "t_infinity");
  ModuleMap acc = ModuleMap::identity(g.prime(), g.module(0));
  for (int i = 0; i > g.lo(); --i) acc = compose(g.t(i), acc);
  return acc;
}

ModuleMap u_infinity(const FpGauge& g) {
  require_zero_in_window(g, "u_infinity");
  ModuleMap acc = ModuleMap::identity(g.prime(), g.module(0));
  for (int i = 1; i <= g.hi(); ++i) acc = compose(g.u(i), acc);
  return acc;
}

ModuleHomology syntomic_cohomology(const FpGauge& g) {
  require_zero_in_window(g, "syntomic_cohomology");
  require_valid(g, "syntomic_cohomology");
  return homology_two_term(t_infinity(g) - compose(g.tau(), u_infinity(g)));
}

PhiModule rational_realization(const FpGauge& g) {
  require_valid(g, "rational_realization");
  const FpGauge e = with_zero(g);
  const Index r = e.module(e.lo()).free_rank();
  const Index r0 = e.module(0).free_rank();
  const Index rb = e.module(e.hi()).free_rank();
  const QMatrix t_inf = t_infinity(e).matrix().topLeftCorner(r, r0);
  const QMatrix u_inf = u_infinity(e).matrix().topLeftCorner(rb, r0);
  const QMatrix tau = e.tau().matrix().topLeftCorner(r, rb);
  return PhiModule(e.prime(), tau * u_inf * inverse<Rational>(t_inf));
}

std::vector<int> hodge_tate_weights(const FpGauge& g) {
  std::vector<int> out;
  for (int i = g.lo(); i <= g.hi(); ++i) {
    const QMatrix u = g.u(i).matrix(), t = g.t(i + 1).matrix();
    QMatrix both(u.rows(), u.cols() + t.cols());
    both << u, t;
    const Index w = both.rows() - rank(reduce_mod_p(both, g.prime()));
    out.insert(out.end(), static_cast<std::size_t>(w), i);
  }
  return out;
}

FCrystalPoint::FCrystalPoint(Prime p_, QMatrix tau) : p(p_), tau_crys(std::move(tau)) {
  if (tau_crys.rows() != tau_crys.cols()) throw PreconditionError("FCrystalPoint: tau_crys must be square");
  if (!is_invertible(tau_crys)) throw LawViolation("FCrystalPoint: tau_crys is singular");
}

namespace {

// tau_crys = U^{-1} diag(p^e) V^{-1} with U, V in GL_r(Z_(p)).
struct CrystalSmith {
  QMatrix u, v;
  std::vector<int> e;
};

CrystalSmith crystal_smith(const FCrystalPoint& c) {
  int s = 0;
  bool first = true;
  for (Index i = 0; i < c.tau_crys.rows(); ++i)
    for (Index j = 0; j < c.tau_crys.cols(); ++j)
      if (c.tau_crys(i, j) != 0) {
        const int v = valuation(c.tau_crys(i, j), c.p).value();
        s = first ? v : std::min(s, v);
        first = false;
      }
  const SmithForm sf = smith_normal_form(QMatrix(c.tau_crys * prime_power(c.p, -s)), c.p);
  CrystalSmith out{sf.u, sf.v, sf.exponents};
  for (int& e : out.e) e += s;
  return out;
}

QMatrix nygaard_diagonal(const std::vector<int>& e, int i, Prime p) {
  QMatrix d = zeros<Rational>(static_cast<Index>(e.size()), static_cast<Index>(e.size()));
  for (std::size_t k = 0; k < e.size(); ++k)
    d(static_cast<Index>(k), static_cast<Index>(k)) = prime_power(p, std::max(i - e[k], 0));
  return d;
}

}  // namespace

QMatrix nygaard_basis(const FCrystalPoint& c, int i) {
  const CrystalSmith cs = crystal_smith(c);
  return cs.v * nygaard_diagonal(cs.e, i, c.p);
}

FpGauge gauge_from_fcrystal(const FCrystalPoint& c) {
  const CrystalSmith cs = crystal_smith(c);
  const Prime p = c.p;
  int lo = 0, hi = 0;
  for (int e : cs.e) lo = std::min(lo, e), hi = std::max(hi, e);
  const FGModule m = FGModule::free(static_cast<int>(c.rank()));

  // In the bases B_i = V diag(p^{max(i - e_k, 0)}) of Fil^i the inclusion
  // t_i is diagonal and tau = B_lo^{-1} p^{-hi} tau_crys B_hi = V^{-1} U^{-1}.
  std::vector<FGModule> modules(static_cast<std::size_t>(hi - lo + 1), m);
  std::vector<ModuleMap> t, u;
  for (int i = lo + 1; i <= hi; ++i) {
    const QMatrix ti = inverse<Rational>(nygaard_diagonal(cs.e, i - 1, p)) * nygaard_diagonal(cs.e, i, p);
    t.emplace_back(p, m, m, ti);
    u.emplace_back(p, m, m, QMatrix(Rational(p.value()) * inverse<Rational>(ti)));
  }
  const QMatrix tau = inverse<Rational>(cs.v) * inverse<Rational>(cs.u);
  return FpGauge(p, lo, std::move(modules), std::move(t), std::move(u), ModuleMap(p, m, m, tau));
}

FCrystalPoint breuil_kisin_crystal(Prime p, int n) {
  QMatrix tau(1, 1);
  tau(0, 0) = prime_power(p, -n);
  return FCrystalPoint(p, tau);
}

bool in_nygaard(const FCrystalPoint& c, int i, const QMatrix& m) {
  for (Index r = 0; r < m.rows(); ++r)
    for (Index k = 0; k < m.cols(); ++k)
      if (!is_p_local(m(r, k), c.p)) return false;
  const QMatrix image = c.tau_crys * m;
  for (Index r = 0; r < image.rows(); ++r)
    for (Index k = 0; k < image.cols(); ++k)
      if (image(r, k) != 0 && valuation(image(r, k), c.p).value() < i) return false;
  return true;
}

std::vector<int> mod_p_injectivity_failures(const FpGauge& g) {
  std::vector<int> out;
  for (int i = g.lo() + 1; i <= g.hi(); ++i) {
    const ModuleMap t = g.t(i);
    if (rank(reduce_mod_p(t.matrix(), g.prime())) < t.source().generators()) out.push_back(i);
  }
  return out;
}

}  // namespace gaugeworks
