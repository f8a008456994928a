#include "gaugeworks/redlocus.hpp"

#include <algorithm>

namespace gaugeworks {

namespace {

// Rebinds unbound literals (left by generic elimination) to p.
FpMatrix bind(const FpMatrix& m, Prime p) {
  FpMatrix out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) out(i, j) = Fp(static_cast<std::int64_t>(m(i, j).value()), p);
  return out;
}

FpMatrix product(const FpMatrix& a, const FpMatrix& b, Prime p) {
  if (a.cols() == 0) return fp_zero(a.rows(), b.cols(), p);
  return a * b;
}

FpMatrix block_diag(const FpMatrix& a, const FpMatrix& b, Prime p) {
  FpMatrix m = fp_zero(a.rows() + b.rows(), a.cols() + b.cols(), p);
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

FpMatrix hstack(const FpMatrix& a, const FpMatrix& b) {
  FpMatrix m(a.rows(), a.cols() + b.cols());
  m << a, b;
  return m;
}

FpMatrix vstack(const FpMatrix& a, const FpMatrix& b) {
  FpMatrix m(a.rows() + b.rows(), a.cols());
  m << a, b;
  return m;
}

void require_shape(const FpMatrix& m, Index rows, Index cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols)
    throw PreconditionError(what + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) + ", got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

// Quotient of F_p^n by span(sub): complement columns c and projection q with
// q sub = 0 and q c = id.
struct Quotient {
  FpMatrix complement;
  FpMatrix projection;
};

Quotient quotient(const FpMatrix& sub, Prime p) {
  const FpMatrix s = bind(column_space(sub), p);
  const FpMatrix c = bind(cokernel_complement(sub), p);
  const FpMatrix inv = inverse<Fp>(hstack(s, c));
  return {c, bind(inv.bottomRows(c.cols()), p)};
}

std::string at(int i) { return " at i = " + std::to_string(i); }

}  // namespace

// ---- dR ----

LawReport validate(const ThetaModule& m) {
  LawReport r;
  if (m.theta.rows() != m.theta.cols()) {
    r.violations.push_back("Theta is not square");
    return r;
  }
  const FpMatrix t = bind(m.theta, m.p);
  if (!is_nilpotent(FpMatrix(matrix_power(t, static_cast<unsigned>(m.p.value())) - t)))
    r.violations.push_back("Theta^p - Theta is not nilpotent");
  return r;
}

FpHomology coh_dR(const ThetaModule& m) { return fp_homology_two_term(m.theta); }

// ---- Hod ----

GradedThetaModule::GradedThetaModule(Prime p, int lo, std::vector<Index> dims, std::vector<FpMatrix> theta)
    : p_(p), lo_(lo), dims_(std::move(dims)), theta_(std::move(theta)) {
  if (theta_.size() != dims_.size()) throw PreconditionError("GradedThetaModule: one Theta per degree");
  for (int i = lo_; i <= hi(); ++i)
    require_shape(theta_[static_cast<std::size_t>(i - lo_)], dim(i - static_cast<int>(p.value())), dim(i),
                  "GradedThetaModule Theta" + at(i));
}

Index GradedThetaModule::dim(int i) const {
  if (i < lo_ || i > hi()) return 0;
  return dims_[static_cast<std::size_t>(i - lo_)];
}

FpMatrix GradedThetaModule::theta(int i) const {
  if (i < lo_ || i > hi()) return fp_zero(dim(i - static_cast<int>(p_.value())), dim(i), p_);
  return theta_[static_cast<std::size_t>(i - lo_)];
}

namespace {

// Theta on the direct sum of all graded pieces.
FpMatrix total_theta(const GradedThetaModule& m) {
  std::vector<Index> offset;
  Index n = 0;
  for (int i = m.lo(); i <= m.hi(); ++i) offset.push_back(n), n += m.dim(i);
  FpMatrix t = fp_zero(n, n, m.prime());
  const int p = static_cast<int>(m.prime().value());
  for (int i = m.lo(); i <= m.hi(); ++i)
    if (i - p >= m.lo())
      t.block(offset[static_cast<std::size_t>(i - p - m.lo())], offset[static_cast<std::size_t>(i - m.lo())],
              m.dim(i - p), m.dim(i)) = m.theta(i);
  return t;
}

}  // namespace

LawReport validate(const GradedThetaModule& m) {
  LawReport r;
  if (!is_nilpotent(total_theta(m))) r.violations.push_back("graded Theta is not nilpotent");
  return r;
}

FpHomology coh_Hod(const GradedThetaModule& m) { return fp_homology_two_term(m.theta(0)); }

// ---- HT,c ----

A1Module::A1Module(Prime p, int lo, std::vector<Index> dims, std::vector<FpMatrix> x, std::vector<FpMatrix> d)
    : p_(p), lo_(lo), dims_(std::move(dims)), x_(std::move(x)), d_(std::move(d)) {
  if (dims_.empty()) throw PreconditionError("A1Module: empty window");
  if (x_.size() + 1 != dims_.size() || d_.size() != dims_.size())
    throw PreconditionError("A1Module: need one x per step and one D per degree");
  for (int i = lo_; i <= hi(); ++i) {
    const auto k = static_cast<std::size_t>(i - lo_);
    if (i < hi()) require_shape(x_[k], dim(i + 1), dim(i), "A1Module x" + at(i));
    require_shape(d_[k], dim(i - 1), dim(i), "A1Module D" + at(i));
  }
}

A1Module A1Module::from_honest(Prime p, int lo, const std::vector<FpMatrix>& bases_in, const FpMatrix& e) {
  if (bases_in.empty()) throw PreconditionError("A1Module::from_honest: empty window");
  const Index n = e.rows();
  std::vector<FpMatrix> bases = bases_in;
  if (rank(bases.back()) != n) throw LawViolation("A1Module::from_honest: top filtration step is not the whole space");
  bases.back() = fp_identity(n, p);
  std::vector<Index> dims;
  std::vector<FpMatrix> x, d;
  for (std::size_t k = 0; k < bases.size(); ++k) {
    const int i = lo + static_cast<int>(k);
    if (rank(bases[k]) != bases[k].cols()) throw LawViolation("A1Module::from_honest: dependent basis" + at(i));
    dims.push_back(bases[k].cols());
    if (k + 1 < bases.size()) {
      const auto xi = solve<Fp>(bases[k + 1], bases[k]);
      if (!xi) throw LawViolation("A1Module::from_honest: filtration not increasing" + at(i));
      x.push_back(bind(*xi, p));
    }
    const FpMatrix below = k == 0 ? fp_zero(n, 0, p) : bases[k - 1];
    const FpMatrix image = product(FpMatrix(e + fp_scalar(n, i, p)), bases[k], p);
    const auto di = solve<Fp>(below, image);
    if (!di) throw LawViolation("A1Module::from_honest: E + i does not map Fil_i into Fil_{i-1}" + at(i));
    d.push_back(bind(*di, p));
  }
  return A1Module(p, lo, std::move(dims), std::move(x), std::move(d));
}

Index A1Module::dim(int i) const {
  if (i < lo_) return 0;
  return dims_[static_cast<std::size_t>(std::min(i, hi()) - lo_)];
}

FpMatrix A1Module::x(int i) const {
  if (i < lo_) return fp_zero(dim(i + 1), 0, p_);
  if (i >= hi()) return fp_identity(dim(hi()), p_);
  return x_[static_cast<std::size_t>(i - lo_)];
}

FpMatrix A1Module::d(int i) const {
  if (i < lo_) return fp_zero(0, 0, p_);
  if (i <= hi()) return d_[static_cast<std::size_t>(i - lo_)];
  return FpMatrix(product(x(hi() - 1), d(hi()), p_) + fp_scalar(dim(hi()), i - hi(), p_));
}

LawReport validate(const A1Module& m) {
  LawReport r;
  const Prime p = m.prime();
  for (int i = m.lo(); i <= m.hi(); ++i) {
    const FpMatrix rel = product(m.d(i + 1), m.x(i), p) - product(m.x(i - 1), m.d(i), p);
    if (!is_zero(FpMatrix(rel - fp_identity(m.dim(i), p)))) r.violations.push_back("Dx - xD != 1" + at(i));
  }
  return r;
}

FpHomology coh_HTc(const A1Module& m) { return fp_homology_two_term(m.d(0)); }

int dR_level(const A1Module& m) {
  const int p = static_cast<int>(m.prime().value());
  const int target = std::max(m.hi(), 0);
  return (target + p - 1) / p * p;
}

ThetaModule restrict_HTc_to_dR(const A1Module& m) {
  const int n = dR_level(m);
  return {m.prime(), bind(product(m.x(n - 1), m.d(n), m.prime()), m.prime())};
}

namespace {

// x^k : Fil_from -> Fil_{from + k}
FpMatrix x_power(const A1Module& m, int from, int k) {
  FpMatrix acc = fp_identity(m.dim(from), m.prime());
  for (int j = 0; j < k; ++j) acc = product(m.x(from + j), acc, m.prime());
  return acc;
}

// D^k : Fil_from -> Fil_{from - k}
FpMatrix d_power(const A1Module& m, int from, int k) {
  FpMatrix acc = fp_identity(m.dim(from), m.prime());
  for (int j = 0; j < k; ++j) acc = product(m.d(from - j), acc, m.prime());
  return acc;
}

// gr_i = Fil_i / x Fil_{i-1}, in Fil_i coordinates.
Quotient htc_graded(const A1Module& m, int i) {
  if (i < m.lo() || i > m.hi()) {
    const Index n = m.dim(i);
    return {fp_zero(n, 0, m.prime()), fp_zero(0, n, m.prime())};
  }
  return quotient(m.x(i - 1), m.prime());
}

// gr^i = Fil^i / Fil^{i+1}, in Fil^i coordinates.
Quotient drp_graded(const FilThetaModule& m, int i) {
  const Prime p = m.prime();
  const FpMatrix here = m.fil(i);
  if (i < m.lo() || i > m.hi()) return {fp_zero(here.cols(), 0, p), fp_zero(0, here.cols(), p)};
  return quotient(bind(coordinates<Fp>(here, m.fil(i + 1)), p), p);
}

}  // namespace

GradedThetaModule restrict_HTc_to_Hod(const A1Module& m) {
  const Prime p = m.prime();
  const int pv = static_cast<int>(p.value());
  std::vector<Index> dims;
  std::vector<FpMatrix> theta;
  for (int i = m.lo(); i <= m.hi(); ++i) dims.push_back(htc_graded(m, i).complement.cols());
  for (int i = m.lo(); i <= m.hi(); ++i) {
    const Quotient src = htc_graded(m, i), dst = htc_graded(m, i - pv);
    theta.push_back(bind(product(dst.projection, product(d_power(m, i, pv), src.complement, p), p), p));
  }
  return GradedThetaModule(p, m.lo(), std::move(dims), std::move(theta));
}

std::optional<HonestA1> honest_form(const A1Module& m) {
  const Prime p = m.prime();
  for (int i = m.lo(); i < m.hi(); ++i)
    if (rank(m.x(i)) != m.dim(i)) return std::nullopt;
  HonestA1 h{m.lo(), {}, {}};
  for (int i = m.lo(); i <= m.hi(); ++i) h.bases.push_back(bind(x_power(m, i, m.hi() - i), p));
  h.e = bind(product(m.x(m.hi() - 1), m.d(m.hi()), p) - fp_scalar(m.dim(m.hi()), m.hi(), p), p);
  return h;
}

// ---- dR,+ ----

FilThetaModule::FilThetaModule(Prime p, int lo, std::vector<FpMatrix> bases, FpMatrix theta)
    : p_(p), lo_(lo), bases_(std::move(bases)), theta_(std::move(theta)) {
  if (bases_.empty()) throw PreconditionError("FilThetaModule: empty window");
  const Index n = theta_.rows();
  require_shape(theta_, n, n, "FilThetaModule Theta");
  for (std::size_t k = 0; k < bases_.size(); ++k)
    if (bases_[k].rows() != n)
      throw PreconditionError("FilThetaModule: filtration step" + at(lo_ + static_cast<int>(k)) +
                              " does not live in the underlying space");
}

FpMatrix FilThetaModule::fil(int i) const {
  if (i < lo_) return fp_identity(dim(), p_);
  if (i > hi()) return fp_zero(dim(), 0, p_);
  return bases_[static_cast<std::size_t>(i - lo_)];
}

LawReport validate(const FilThetaModule& m) {
  LawReport r;
  const Prime p = m.prime();
  const int pv = static_cast<int>(p.value());
  if (rank(m.fil(m.lo())) != m.dim()) r.violations.push_back("Fil^lo is not the whole space");
  for (int i = m.lo(); i <= m.hi(); ++i) {
    const FpMatrix b = m.fil(i);
    if (rank(b) != b.cols()) r.violations.push_back("dependent filtration basis" + at(i));
    if (rank(hstack(b, m.fil(i + 1))) != rank(b)) r.violations.push_back("Fil^{i+1} not inside Fil^i" + at(i));
    if (rank(hstack(m.fil(i - pv), product(m.theta(), b, p))) != rank(m.fil(i - pv)))
      r.violations.push_back("Theta does not map Fil^i into Fil^{i-p}" + at(i));
  }
  if (!r.ok()) return r;
  const ThetaModule underlying{p, m.theta()};
  for (const auto& v : validate(underlying).violations) r.violations.push_back(v + " on the underlying space");
  const GradedThetaModule gr = restrict_dRplus_to_Hod(m);
  if (!is_nilpotent(FpMatrix(matrix_power(total_theta(gr), static_cast<unsigned>(pv)))))
    r.violations.push_back("Theta^p is not nilpotent on gr");
  return r;
}

FpHomology coh_dRplus(const FilThetaModule& m) {
  const Prime p = m.prime();
  const FpMatrix target = m.fil(-static_cast<int>(p.value()));
  return fp_homology_two_term(bind(coordinates<Fp>(target, product(m.theta(), m.fil(0), p)), p));
}

ThetaModule restrict_dRplus_to_dR(const FilThetaModule& m) { return {m.prime(), m.theta()}; }

GradedThetaModule restrict_dRplus_to_Hod(const FilThetaModule& m) {
  const Prime p = m.prime();
  const int pv = static_cast<int>(p.value());
  std::vector<Index> dims;
  std::vector<FpMatrix> theta;
  for (int i = m.lo(); i <= m.hi(); ++i) dims.push_back(drp_graded(m, i).complement.cols());
  for (int i = m.lo(); i <= m.hi(); ++i) {
    const Quotient src = drp_graded(m, i), dst = drp_graded(m, i - pv);
    const FpMatrix image = product(m.theta(), product(m.fil(i), src.complement, p), p);
    theta.push_back(bind(product(dst.projection, bind(coordinates<Fp>(m.fil(i - pv), image), p), p), p));
  }
  return GradedThetaModule(p, m.lo(), std::move(dims), std::move(theta));
}

// ---- glued data ----

namespace {

FpMatrix alpha_at(const ReducedFGauge& g, int i, Index rows, Index cols) {
  const auto it = g.alpha_hod.find(i);
  if (it == g.alpha_hod.end()) return fp_zero(rows, cols, g.htc.prime());
  return it->second;
}

}  // namespace

LawReport validate(const ReducedFGauge& g) {
  LawReport r;
  const Prime p = g.htc.prime();
  if (g.drp.prime() != p) {
    r.violations.push_back("components over different primes");
    return r;
  }
  for (const auto& v : validate(g.htc).violations) r.violations.push_back("HT,c: " + v);
  for (const auto& v : validate(g.drp).violations) r.violations.push_back("dR,+: " + v);
  if (!r.ok()) return r;

  const ThetaModule hd = restrict_HTc_to_dR(g.htc), dd = restrict_dRplus_to_dR(g.drp);
  if (g.alpha_dR.rows() != dd.dim() || g.alpha_dR.cols() != hd.dim() || !is_invertible(g.alpha_dR))
    r.violations.push_back("alpha_dR is not an isomorphism");
  else if (!is_zero(FpMatrix(product(g.alpha_dR, hd.theta, p) - product(dd.theta, g.alpha_dR, p))))
    r.violations.push_back("alpha_dR does not commute with Theta");

  const GradedThetaModule hh = restrict_HTc_to_Hod(g.htc), dh = restrict_dRplus_to_Hod(g.drp);
  const int pv = static_cast<int>(p.value());
  const int lo = std::min(hh.lo(), dh.lo()), hi = std::max(hh.hi(), dh.hi());
  bool isos = true;
  for (const auto& [i, a] : g.alpha_hod)
    if ((i < lo || i > hi) && (a.rows() != 0 || a.cols() != 0)) {
      r.violations.push_back("alpha_Hod given outside the graded window" + at(i));
      isos = false;
    }
  for (int i = lo; i <= hi; ++i) {
    if (hh.dim(i) == 0 && dh.dim(i) == 0) continue;
    const auto it = g.alpha_hod.find(i);
    if (it == g.alpha_hod.end() || it->second.rows() != dh.dim(i) || it->second.cols() != hh.dim(i) ||
        !is_invertible(it->second)) {
      r.violations.push_back("alpha_Hod is not an isomorphism" + at(i));
      isos = false;
    }
  }
  if (isos)
    for (int i = lo; i <= hi; ++i) {
      const FpMatrix src = alpha_at(g, i, dh.dim(i), hh.dim(i));
      const FpMatrix dst = alpha_at(g, i - pv, dh.dim(i - pv), hh.dim(i - pv));
      if (!is_zero(FpMatrix(product(dst, hh.theta(i), p) - product(dh.theta(i), src, p))))
        r.violations.push_back("alpha_Hod does not commute with Theta" + at(i));
    }
  return r;
}

ReducedComponents reduced_components(const ReducedFGauge& g) {
  validate(g).require("reduced_components");
  const Prime p = g.htc.prime();
  const int pv = static_cast<int>(p.value());
  const A1Module& h = g.htc;
  const FilThetaModule& f = g.drp;
  const GradedThetaModule dh = restrict_dRplus_to_Hod(f);
  const GradedThetaModule hh = restrict_HTc_to_Hod(h);

  ReducedComponents c;
  c.dR_plus = bind(coordinates<Fp>(f.fil(-pv), product(f.theta(), f.fil(0), p)), p);
  c.htc = h.d(0);
  c.dR = f.theta();
  c.hod = dh.theta(0);

  c.a_dR = {f.fil(0), f.fil(-pv)};
  c.a_hod = {drp_graded(f, 0).projection, drp_graded(f, -pv).projection};

  const int n = dR_level(h);
  c.b_dR = {product(g.alpha_dR, x_power(h, 0, n), p), product(g.alpha_dR, x_power(h, -1, n + 1), p)};
  const FpMatrix a0 = alpha_at(g, 0, dh.dim(0), hh.dim(0));
  const FpMatrix ap = alpha_at(g, -pv, dh.dim(-pv), hh.dim(-pv));
  c.b_hod = {product(a0, htc_graded(h, 0).projection, p),
             product(ap, product(htc_graded(h, -pv).projection, d_power(h, -1, pv - 1), p), p)};
  for (FpChainMap* m : {&c.a_dR, &c.a_hod, &c.b_dR, &c.b_hod}) {
    m->f0 = bind(m->f0, p);
    m->f1 = bind(m->f1, p);
  }
  return c;
}

ReducedTotal reduced_total_complex(const ReducedFGauge& g) {
  const ReducedComponents c = reduced_components(g);
  const Prime p = g.htc.prime();
  const FpMatrix ds = block_diag(c.dR_plus, c.htc, p);
  const FpMatrix dt = block_diag(c.dR, c.hod, p);
  const FpMatrix f0 = vstack(hstack(c.a_dR.f0, FpMatrix(-c.b_dR.f0)), hstack(c.a_hod.f0, FpMatrix(-c.b_hod.f0)));
  const FpMatrix f1 = vstack(hstack(c.a_dR.f1, FpMatrix(-c.b_dR.f1)), hstack(c.a_hod.f1, FpMatrix(-c.b_hod.f1)));
  ReducedTotal t{bind(vstack(ds, f0), p), bind(hstack(f1, FpMatrix(-dt)), p)};
  if (!is_zero(product(t.d1, t.d0, p)))
    throw LawViolation("reduced total complex: restriction maps are not chain maps");
  return t;
}

ReducedCohomology reduced_syntomic_cohomology(const ReducedFGauge& g) {
  const ReducedTotal t = reduced_total_complex(g);
  const Index r0 = rank(t.d0), r1 = rank(t.d1);
  return {t.d0.cols() - r0, t.d0.rows() - r0 - r1, t.d1.rows() - r1};
}

ReducedFGauge bk_reduced(Prime p, int n) {
  return {A1Module(p, -n, {1}, {}, {fp_zero(0, 1, p)}), FilThetaModule(p, -n, {fp_identity(1, p)}, fp_scalar(1, n, p)),
          fp_identity(1, p), {{-n, fp_identity(1, p)}}};
}

ReducedFGauge zero_reduced(Prime p) {
  return {A1Module(p, 0, {0}, {}, {fp_zero(0, 0, p)}), FilThetaModule(p, 0, {fp_zero(0, 0, p)}, fp_zero(0, 0, p)),
          fp_zero(0, 0, p), {}};
}

// ---- constructions ----

namespace {

HonestA1 require_honest(const A1Module& m, const char* what) {
  auto h = honest_form(m);
  if (!h) throw PreconditionError(std::string(what) + ": HT,c data is not honest (some x is not injective)");
  return *h;
}

// Fil basis (in V) of the honest HT,c piece at degree i, any i.
FpMatrix htc_fil(const HonestA1& h, int i, Prime p) {
  const Index n = h.e.rows();
  const int hi = h.lo + static_cast<int>(h.bases.size()) - 1;
  if (i < h.lo) return fp_zero(n, 0, p);
  if (i >= hi) return fp_identity(n, p);
  return h.bases[static_cast<std::size_t>(i - h.lo)];
}

// Graded pieces of a glued datum, together with vectors representing their
// bases: in V for HT,c (honest) and in V for dR,+.
struct GradedBasis {
  FpMatrix vectors;     // columns in V
  FpMatrix fil;         // basis of the filtration step containing them
  FpMatrix projection;  // from fil coordinates to gr coordinates
};

GradedBasis htc_graded_basis(const A1Module& m, int i) {
  const Prime p = m.prime();
  const HonestA1 h = require_honest(m, "graded basis");
  const Quotient q = htc_graded(m, i);
  const FpMatrix fil = htc_fil(h, i, p);
  return {product(fil, q.complement, p), fil, q.projection};
}

GradedBasis drp_graded_basis(const FilThetaModule& m, int i) {
  const Quotient q = drp_graded(m, i);
  return {product(m.fil(i), q.complement, m.prime()), m.fil(i), q.projection};
}

// gr coordinates of vectors lying in gb.fil.
FpMatrix to_graded(const GradedBasis& gb, const FpMatrix& vectors, Prime p) {
  return bind(product(gb.projection, bind(coordinates<Fp>(gb.fil, vectors), p), p), p);
}

std::vector<int> graded_degrees(const ReducedFGauge& g) {
  const int lo = std::min(g.htc.lo(), g.drp.lo()), hi = std::max(g.htc.hi(), g.drp.hi());
  std::vector<int> out;
  for (int i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

FpMatrix alpha_or_empty(const ReducedFGauge& g, int i) {
  const auto it = g.alpha_hod.find(i);
  if (it != g.alpha_hod.end()) return it->second;
  return fp_zero(0, 0, g.htc.prime());
}

void drop_empty(std::map<int, FpMatrix>& alphas) {
  for (auto it = alphas.begin(); it != alphas.end();)
    it = it->second.size() == 0 ? alphas.erase(it) : std::next(it);
}

}  // namespace

ReducedFGauge direct_sum(const ReducedFGauge& a, const ReducedFGauge& b) {
  const Prime p = a.htc.prime();
  require_same_prime(p, b.htc.prime(), "direct_sum");
  validate(a).require("direct_sum");
  validate(b).require("direct_sum");

  const int hlo = std::min(a.htc.lo(), b.htc.lo()), hhi = std::max(a.htc.hi(), b.htc.hi());
  std::vector<Index> dims;
  std::vector<FpMatrix> x, d;
  for (int i = hlo; i <= hhi; ++i) {
    dims.push_back(a.htc.dim(i) + b.htc.dim(i));
    if (i < hhi) x.push_back(block_diag(a.htc.x(i), b.htc.x(i), p));
    d.push_back(block_diag(a.htc.d(i), b.htc.d(i), p));
  }
  A1Module htc(p, hlo, std::move(dims), std::move(x), std::move(d));

  const int flo = std::min(a.drp.lo(), b.drp.lo()), fhi = std::max(a.drp.hi(), b.drp.hi());
  std::vector<FpMatrix> bases;
  for (int i = flo; i <= fhi; ++i) bases.push_back(block_diag(a.drp.fil(i), b.drp.fil(i), p));
  FilThetaModule drp(p, flo, std::move(bases), block_diag(a.drp.theta(), b.drp.theta(), p));

  ReducedFGauge out{htc, drp, block_diag(a.alpha_dR, b.alpha_dR, p), {}};
  // gr of a sum is the sum of the grs, up to the bases the quotients chose
  for (int i : graded_degrees(out)) {
    const Quotient hq = htc_graded(htc, i), dq = drp_graded(drp, i);
    const FpMatrix hn = product(hq.projection, block_diag(htc_graded(a.htc, i).complement,
                                                          htc_graded(b.htc, i).complement, p), p);
    const FpMatrix dn = product(dq.projection, block_diag(drp_graded(a.drp, i).complement,
                                                          drp_graded(b.drp, i).complement, p), p);
    if (hn.size() == 0 && dn.size() == 0) continue;
    const FpMatrix inner = block_diag(alpha_or_empty(a, i), alpha_or_empty(b, i), p);
    out.alpha_hod[i] = bind(product(dn, product(inner, inverse<Fp>(bind(hn, p)), p), p), p);
  }
  drop_empty(out.alpha_hod);
  return out;
}

ReducedFGauge tensor(const ReducedFGauge& a, const ReducedFGauge& b) {
  const Prime p = a.htc.prime();
  require_same_prime(p, b.htc.prime(), "tensor");
  validate(a).require("tensor");
  validate(b).require("tensor");
  const HonestA1 ha = require_honest(a.htc, "tensor"), hb = require_honest(b.htc, "tensor");
  const Index na = ha.e.rows(), nb = hb.e.rows();
  const int ahi = a.htc.hi(), bhi = b.htc.hi();

  std::vector<FpMatrix> hbases;
  for (int k = ha.lo + hb.lo; k <= ahi + bhi; ++k) {
    FpMatrix span = fp_zero(na * nb, 0, p);
    for (int i = ha.lo; i <= ahi; ++i)
      span = hstack(span, kronecker<Fp>(htc_fil(ha, i, p), htc_fil(hb, k - i, p)));
    hbases.push_back(bind(column_space(span), p));
  }
  const FpMatrix e = kronecker<Fp>(ha.e, fp_identity(nb, p)) + kronecker<Fp>(fp_identity(na, p), hb.e);
  A1Module htc = A1Module::from_honest(p, ha.lo + hb.lo, hbases, bind(e, p));

  std::vector<FpMatrix> fbases;
  for (int k = a.drp.lo() + b.drp.lo(); k <= a.drp.hi() + b.drp.hi(); ++k) {
    FpMatrix span = fp_zero(a.drp.dim() * b.drp.dim(), 0, p);
    for (int i = a.drp.lo(); i <= a.drp.hi(); ++i)
      span = hstack(span, kronecker<Fp>(a.drp.fil(i), b.drp.fil(k - i)));
    fbases.push_back(bind(column_space(span), p));
  }
  const FpMatrix theta = kronecker<Fp>(a.drp.theta(), fp_identity(b.drp.dim(), p)) +
                         kronecker<Fp>(fp_identity(a.drp.dim(), p), b.drp.theta());
  FilThetaModule drp(p, a.drp.lo() + b.drp.lo(), std::move(fbases), bind(theta, p));

  ReducedFGauge out{htc, drp, bind(kronecker<Fp>(a.alpha_dR, b.alpha_dR), p), {}};
  // gr_k of the tensor product is the sum over i + j = k of gr_i ⊗ gr_j
  for (int k : graded_degrees(out)) {
    const GradedBasis ht = htc_graded_basis(htc, k), dt = drp_graded_basis(drp, k);
    if (ht.vectors.cols() == 0 && dt.vectors.cols() == 0) continue;
    FpMatrix hvec = fp_zero(na * nb, 0, p), dvec = fp_zero(a.drp.dim() * b.drp.dim(), 0, p);
    FpMatrix inner = fp_zero(0, 0, p);
    for (int i : graded_degrees(a)) {
      const int j = k - i;
      hvec = hstack(hvec, kronecker<Fp>(htc_graded_basis(a.htc, i).vectors, htc_graded_basis(b.htc, j).vectors));
      dvec = hstack(dvec, kronecker<Fp>(drp_graded_basis(a.drp, i).vectors, drp_graded_basis(b.drp, j).vectors));
      inner = block_diag(inner, kronecker<Fp>(alpha_or_empty(a, i), alpha_or_empty(b, j)), p);
    }
    const FpMatrix hn = to_graded(ht, hvec, p), dn = to_graded(dt, dvec, p);
    out.alpha_hod[k] = bind(product(dn, product(inner, inverse<Fp>(hn), p), p), p);
  }
  drop_empty(out.alpha_hod);
  return out;
}

ReducedFGauge dual(const ReducedFGauge& g) {
  const Prime p = g.htc.prime();
  validate(g).require("dual");
  const HonestA1 h = require_honest(g.htc, "dual");
  const int hlo = h.lo, hhi = g.htc.hi();

  // Fil_k(V*) = ann(Fil_{-k-1}), E* = -E^T
  std::vector<FpMatrix> hbases;
  for (int k = -hhi; k <= -hlo; ++k)
    hbases.push_back(bind(kernel(FpMatrix(htc_fil(h, -k - 1, p).transpose())), p));
  A1Module htc = A1Module::from_honest(p, -hhi, hbases, bind(FpMatrix(-h.e.transpose()), p));

  // Fil^k(V*) = ann(Fil^{1-k}), Theta* = -Theta^T
  std::vector<FpMatrix> fbases;
  for (int k = -g.drp.hi(); k <= -g.drp.lo(); ++k)
    fbases.push_back(bind(kernel(FpMatrix(g.drp.fil(1 - k).transpose())), p));
  FilThetaModule drp(p, -g.drp.hi(), std::move(fbases), bind(FpMatrix(-g.drp.theta().transpose()), p));

  ReducedFGauge out{htc, drp, bind(FpMatrix(inverse<Fp>(g.alpha_dR).transpose()), p), {}};
  // gr_k(V*) pairs perfectly with gr_{-k}(V)
  for (int k : graded_degrees(out)) {
    const GradedBasis ht = htc_graded_basis(htc, k), dt = drp_graded_basis(drp, k);
    if (ht.vectors.cols() == 0 && dt.vectors.cols() == 0) continue;
    const FpMatrix hm = bind(product(htc_graded_basis(g.htc, -k).vectors.transpose(), ht.vectors, p), p);
    const FpMatrix dm = bind(product(drp_graded_basis(g.drp, -k).vectors.transpose(), dt.vectors, p), p);
    const FpMatrix a = alpha_or_empty(g, -k);
    const FpMatrix inner = a.size() == 0 ? a : FpMatrix(inverse<Fp>(a).transpose());
    out.alpha_hod[k] = bind(product(inverse<Fp>(dm), product(inner, hm, p), p), p);
  }
  drop_empty(out.alpha_hod);
  return out;
}

namespace {

bool same_matrix(const FpMatrix& a, const FpMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && is_zero(FpMatrix(a - b));
}

}  // namespace

bool same_structure(const ReducedFGauge& a, const ReducedFGauge& b) {
  if (a.htc.prime() != b.htc.prime()) return false;
  if (a.htc.lo() != b.htc.lo() || a.htc.hi() != b.htc.hi()) return false;
  for (int i = a.htc.lo(); i <= a.htc.hi(); ++i)
    if (!same_matrix(a.htc.x(i), b.htc.x(i)) || !same_matrix(a.htc.d(i), b.htc.d(i))) return false;
  if (a.drp.lo() != b.drp.lo() || a.drp.hi() != b.drp.hi()) return false;
  for (int i = a.drp.lo(); i <= a.drp.hi(); ++i)
    if (!same_matrix(a.drp.fil(i), b.drp.fil(i))) return false;
  if (!same_matrix(a.drp.theta(), b.drp.theta()) || !same_matrix(a.alpha_dR, b.alpha_dR)) return false;
  auto a_alpha = a.alpha_hod, b_alpha = b.alpha_hod;
  drop_empty(a_alpha);
  drop_empty(b_alpha);
  if (a_alpha.size() != b_alpha.size()) return false;
  for (const auto& [i, m] : a_alpha) {
    const auto it = b_alpha.find(i);
    if (it == b_alpha.end() || !same_matrix(m, it->second)) return false;
  }
  return true;
}

}  // namespace gaugeworks
