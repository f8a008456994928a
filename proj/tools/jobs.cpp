#include "jobs.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gaugeworks/beilinson.hpp"
#include "gaugeworks/fgauge.hpp"
#include "gaugeworks/filphi.hpp"
#include "gaugeworks/higgs.hpp"
#include "gaugeworks/redlocus.hpp"

namespace gaugeworks::cli {

namespace {

class SchemaError : public std::runtime_error {
public:
  SchemaError(const std::string& path, const std::string& what)
      : std::runtime_error((path.empty() ? std::string("top level") : path) + ": " + what) {}
};

const char* type_name(const Json& j) { return j.type_name(); }

// A JSON node together with its dotted path, for messages naming the field.
class Node {
public:
  Node(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const Json& json() const { return *j_; }
  bool has(const char* key) const { return j_->is_object() && j_->contains(key); }

  Node at(const char* key) const {
    require_object();
    if (!j_->contains(key)) throw SchemaError(path_, std::string("missing field \"") + key + "\"");
    return Node((*j_)[key], join(key));
  }
  Node at(std::size_t k) const { return Node((*j_)[k], path_ + "[" + std::to_string(k) + "]"); }
  std::size_t size() const { return j_->size(); }

  void require_object() const {
    if (!j_->is_object()) throw SchemaError(path_, std::string("expected an object, got ") + type_name(*j_));
  }
  void require_array() const {
    if (!j_->is_array()) throw SchemaError(path_, std::string("expected an array, got ") + type_name(*j_));
  }
  /// Rejects keys outside the allowed list.
  void allow_only(std::initializer_list<const char*> keys) const {
    require_object();
    for (const auto& item : j_->items()) {
      bool known = false;
      for (const char* k : keys) known = known || item.key() == k;
      if (!known) throw SchemaError(join(item.key()), "unknown field");
    }
  }

  std::int64_t integer() const {
    if (!j_->is_number_integer()) throw SchemaError(path_, std::string("expected an integer, got ") + type_name(*j_));
    return j_->get<std::int64_t>();
  }
  int small_int(int bound = 1000) const {
    const std::int64_t v = integer();
    if (v < -bound || v > bound) throw SchemaError(path_, "integer out of range [-" + std::to_string(bound) + ", " +
                                                              std::to_string(bound) + "]");
    return static_cast<int>(v);
  }
  Index count(int bound = 64) const {
    const int v = small_int(bound);
    if (v < 0) throw SchemaError(path_, "expected a non-negative integer");
    return v;
  }
  std::string string() const {
    if (!j_->is_string()) throw SchemaError(path_, std::string("expected a string, got ") + type_name(*j_));
    return j_->get<std::string>();
  }
  Rational rational() const {
    try {
      return parse_rational(string());
    } catch (const ParseError& e) {
      throw SchemaError(path_, e.what());
    }
  }

  /// Array of rows of rational strings. Known dimensions are enforced; an
  /// empty array stands for a matrix with zero rows, or with zero columns
  /// when the expected row count is positive.
  QMatrix matrix(std::optional<Index> rows = {}, std::optional<Index> cols = {}) const {
    require_array();
    if (j_->empty()) {
      const Index r = rows.value_or(0);
      if (r > 0 && cols && *cols > 0)
        throw SchemaError(path_, "expected a " + std::to_string(r) + "x" + std::to_string(*cols) + " matrix");
      if (r == 0 && !cols) throw SchemaError(path_, "empty matrix needs known dimensions");
      return QMatrix(r, r > 0 ? 0 : *cols);
    }
    const Index r = static_cast<Index>(j_->size());
    if (rows && *rows != r)
      throw SchemaError(path_, "matrix has " + std::to_string(r) + " rows, expected " + std::to_string(*rows));
    Index c = -1;
    for (std::size_t i = 0; i < j_->size(); ++i) {
      const Node row = at(i);
      row.require_array();
      const Index len = static_cast<Index>(row.size());
      if (c < 0) c = len;
      if (len != c)
        throw SchemaError(row.path(), "row has " + std::to_string(len) + " entries, expected " + std::to_string(c));
    }
    if (cols && *cols != c)
      throw SchemaError(path_, "matrix has " + std::to_string(c) + " columns, expected " + std::to_string(*cols));
    QMatrix m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index k = 0; k < c; ++k) m(i, k) = at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).rational();
    return m;
  }

  FpMatrix fp_matrix(Prime p, std::optional<Index> rows = {}, std::optional<Index> cols = {}) const {
    const QMatrix q = matrix(rows, cols);
    FpMatrix m(q.rows(), q.cols());
    for (Index i = 0; i < q.rows(); ++i)
      for (Index k = 0; k < q.cols(); ++k) {
        if (!is_p_local(q(i, k), p))
          throw SchemaError(path_ + "[" + std::to_string(i) + "][" + std::to_string(k) + "]",
                            "entry " + to_string(q(i, k)) + " has p in its denominator");
        m(i, k) = reduce_mod_p(q(i, k), p);
      }
    return m;
  }

private:
  std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  const Json* j_;
  std::string path_;
};

Index rows_of(const std::vector<Index>& dims, int lo, int i) {
  if (i < lo || i >= lo + static_cast<int>(dims.size())) return 0;
  return dims[static_cast<std::size_t>(i - lo)];
}

std::vector<Index> counts(const Node& n, int bound = 64) {
  n.require_array();
  std::vector<Index> out;
  for (std::size_t k = 0; k < n.size(); ++k) out.push_back(n.at(k).count(bound));
  return out;
}

// ---- payloads ----

FilteredPhiModule parse_filphi(const Node& payload, Prime p) {
  if (payload.has("tate")) {
    payload.allow_only({"tate"});
    return tate(p, payload.at("tate").small_int());
  }
  payload.allow_only({"phi", "filtration"});
  const QMatrix phi = payload.at("phi").matrix();
  if (phi.rows() != phi.cols()) throw SchemaError(payload.at("phi").path(), "Frobenius must be square");
  const Index n = phi.rows();
  const Node fil = payload.at("filtration");
  if (fil.has("jump")) {
    fil.allow_only({"jump"});
    return FilteredPhiModule(p, FilteredSpace::single_jump(n, fil.at("jump").small_int()), phi);
  }
  if (fil.has("subspaces")) {
    fil.allow_only({"lo", "subspaces"});
    const Node subs = fil.at("subspaces");
    subs.require_array();
    if (subs.size() == 0) throw SchemaError(subs.path(), "need at least one step");
    std::vector<QMatrix> bases;
    for (std::size_t k = 0; k < subs.size(); ++k) bases.push_back(subs.at(k).matrix(n));
    return FilteredPhiModule(p, FilteredSpace::from_subspaces(n, fil.at("lo").small_int(), bases), phi);
  }
  fil.allow_only({"lo", "dims", "transitions"});
  const std::vector<Index> dims = counts(fil.at("dims"));
  if (dims.empty()) throw SchemaError(fil.at("dims").path(), "need at least one step");
  if (dims.front() != n) throw SchemaError(fil.at("dims").path(), "first step must be the whole space");
  const Node tr = fil.at("transitions");
  tr.require_array();
  if (tr.size() + 1 != dims.size())
    throw SchemaError(tr.path(), "need " + std::to_string(dims.size() - 1) + " transitions");
  std::vector<QMatrix> maps;
  for (std::size_t k = 0; k < tr.size(); ++k) maps.push_back(tr.at(k).matrix(dims[k], dims[k + 1]));
  return FilteredPhiModule(p, FilteredSpace(fil.at("lo").small_int(), dims, maps), phi);
}

FpGauge parse_fgauge(const Node& payload, Prime p) {
  if (payload.has("bk")) {
    payload.allow_only({"bk"});
    return gauge_from_fcrystal(breuil_kisin_crystal(p, payload.at("bk").small_int(50)));
  }
  if (payload.has("fcrystal")) {
    payload.allow_only({"fcrystal"});
    const QMatrix tau = payload.at("fcrystal").matrix();
    if (tau.rows() != tau.cols() || tau.rows() == 0)
      throw SchemaError(payload.at("fcrystal").path(), "tau must be a non-empty square matrix");
    return gauge_from_fcrystal(FCrystalPoint(p, tau));
  }
  payload.allow_only({"lo", "modules", "t", "u", "tau"});
  const int lo = payload.at("lo").small_int();
  const Node mods = payload.at("modules");
  mods.require_array();
  if (mods.size() == 0) throw SchemaError(mods.path(), "need at least one module");
  std::vector<FGModule> modules;
  for (std::size_t k = 0; k < mods.size(); ++k) {
    const Node m = mods.at(k);
    m.allow_only({"free", "torsion"});
    std::vector<int> torsion;
    if (m.has("torsion"))
      for (Index e : counts(m.at("torsion"))) {
        if (e == 0) throw SchemaError(m.at("torsion").path(), "torsion exponents must be positive");
        torsion.push_back(static_cast<int>(e));
      }
    std::sort(torsion.begin(), torsion.end());
    modules.emplace_back(static_cast<int>(m.has("free") ? m.at("free").count() : 0), torsion);
  }
  const Node t = payload.at("t"), u = payload.at("u");
  t.require_array();
  u.require_array();
  if (t.size() + 1 != modules.size()) throw SchemaError(t.path(), "need one map per step of the window");
  if (u.size() + 1 != modules.size()) throw SchemaError(u.path(), "need one map per step of the window");
  std::vector<ModuleMap> ts, us;
  for (std::size_t k = 0; k + 1 < modules.size(); ++k) {
    const FGModule& below = modules[k];
    const FGModule& above = modules[k + 1];
    ts.emplace_back(p, above, below, t.at(k).matrix(below.generators(), above.generators()));
    us.emplace_back(p, below, above, u.at(k).matrix(above.generators(), below.generators()));
  }
  const FGModule& top = modules.back();
  const FGModule& bottom = modules.front();
  ModuleMap tau(p, top, bottom, payload.at("tau").matrix(bottom.generators(), top.generators()));
  return FpGauge(p, lo, std::move(modules), std::move(ts), std::move(us), std::move(tau));
}

ReducedFGauge parse_reduced(const Node& payload, Prime p) {
  if (payload.has("bk")) {
    payload.allow_only({"bk"});
    return bk_reduced(p, payload.at("bk").small_int(50));
  }
  payload.allow_only({"htc", "drp", "alpha_dR", "alpha_hod"});
  const Node h = payload.at("htc");
  h.allow_only({"lo", "dims", "x", "d"});
  const int hlo = h.at("lo").small_int();
  const std::vector<Index> hdims = counts(h.at("dims"));
  if (hdims.empty()) throw SchemaError(h.at("dims").path(), "need at least one step");
  const Node xs = h.at("x"), ds = h.at("d");
  xs.require_array();
  ds.require_array();
  if (xs.size() + 1 != hdims.size()) throw SchemaError(xs.path(), "need one x per step of the window");
  if (ds.size() != hdims.size()) throw SchemaError(ds.path(), "need one D per degree of the window");
  std::vector<FpMatrix> x, d;
  for (std::size_t k = 0; k + 1 < hdims.size(); ++k) x.push_back(xs.at(k).fp_matrix(p, hdims[k + 1], hdims[k]));
  for (std::size_t k = 0; k < hdims.size(); ++k) {
    const int i = hlo + static_cast<int>(k);
    d.push_back(ds.at(k).fp_matrix(p, rows_of(hdims, hlo, i - 1), hdims[k]));
  }
  A1Module htc(p, hlo, hdims, x, d);

  const Node r = payload.at("drp");
  r.allow_only({"lo", "bases", "theta"});
  const FpMatrix theta = r.at("theta").fp_matrix(p);
  if (theta.rows() != theta.cols()) throw SchemaError(r.at("theta").path(), "Theta must be square");
  const Node bs = r.at("bases");
  bs.require_array();
  if (bs.size() == 0) throw SchemaError(bs.path(), "need at least one step");
  std::vector<FpMatrix> bases;
  for (std::size_t k = 0; k < bs.size(); ++k) bases.push_back(bs.at(k).fp_matrix(p, theta.rows()));
  FilThetaModule drp(p, r.at("lo").small_int(), bases, theta);

  ReducedFGauge g{htc, drp, FpMatrix(), {}};
  g.alpha_dR = payload.at("alpha_dR").fp_matrix(p, restrict_dRplus_to_dR(drp).dim(), restrict_HTc_to_dR(htc).dim());
  const Node ah = payload.at("alpha_hod");
  ah.require_object();
  const GradedThetaModule gh = restrict_HTc_to_Hod(htc), gd = restrict_dRplus_to_Hod(drp);
  for (const auto& item : ah.json().items()) {
    int i = 0;
    try {
      std::size_t used = 0;
      i = std::stoi(item.key(), &used);
      if (used != item.key().size()) throw std::invalid_argument(item.key());
    } catch (const std::exception&) {
      throw SchemaError(ah.path(), "key \"" + item.key() + "\" is not an integer degree");
    }
    g.alpha_hod[i] = Node(item.value(), ah.path() + "." + item.key()).fp_matrix(p, gd.dim(i), gh.dim(i));
  }
  return g;
}

struct HiggsJob {
  GradedHiggsModule module;
  std::vector<int> degrees;
};

HiggsJob parse_higgs(const Node& payload, Prime p) {
  payload.allow_only({"d", "lo", "dims", "phi", "degrees"});
  const int d = static_cast<int>(payload.at("d").count(16));
  const int lo = payload.at("lo").small_int();
  const std::vector<Index> dims = counts(payload.at("dims"));
  const Node phi = payload.at("phi");
  phi.require_array();
  if (phi.size() != static_cast<std::size_t>(d)) throw SchemaError(phi.path(), "need one field per direction");
  std::vector<std::vector<FpMatrix>> fields;
  for (int k = 0; k < d; ++k) {
    const Node f = phi.at(static_cast<std::size_t>(k));
    f.require_array();
    if (f.size() != dims.size()) throw SchemaError(f.path(), "need one matrix per degree");
    std::vector<FpMatrix> mats;
    for (std::size_t j = 0; j < dims.size(); ++j) {
      const int i = lo + static_cast<int>(j);
      mats.push_back(f.at(j).fp_matrix(p, rows_of(dims, lo, i - 1), dims[j]));
    }
    fields.push_back(std::move(mats));
  }
  HiggsJob job{GradedHiggsModule(p, d, lo, dims, fields), {}};
  if (payload.has("degrees")) {
    const Node ds = payload.at("degrees");
    ds.require_array();
    for (std::size_t k = 0; k < ds.size(); ++k) job.degrees.push_back(ds.at(k).small_int());
  } else {
    for (int i = lo; i <= lo + static_cast<int>(dims.size()) - 1 + d; ++i) job.degrees.push_back(i);
  }
  return job;
}

// ---- rendering ----

class Table {
public:
  void row(std::string key, std::string value) { rows_.emplace_back(std::move(key), std::move(value)); }
  std::string render(const std::string& title) const {
    std::size_t w = 0;
    for (const auto& [k, v] : rows_) w = std::max(w, k.size());
    std::ostringstream os;
    os << "== " << title << "\n";
    for (const auto& [k, v] : rows_) os << "  " << std::left << std::setw(static_cast<int>(w) + 2) << k << v << "\n";
    return os.str();
  }

private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::string pair_str(Index a, Index b) { return "(" + std::to_string(a) + ", " + std::to_string(b) + ")"; }

template <typename T>
std::string list_str(const std::vector<T>& v) {
  std::string s = "{";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + std::to_string(v[k]);
  return s + "}";
}

const std::vector<std::string>& allowed_outputs(const std::string& kind) {
  static const std::map<std::string, std::vector<std::string>> table{
      {"filphi", {"cohomology", "admissibility"}},
      {"square", {"cohomology", "residuals"}},
      {"fgauge", {"cohomology", "weights", "residuals"}},
      {"reduced", {"cohomology"}},
      {"higgs", {"cohomology"}},
  };
  return table.at(kind);
}

bool wants(const std::vector<std::string>& outputs, const char* what) {
  return std::find(outputs.begin(), outputs.end(), what) != outputs.end();
}

// ---- per kind ----

void compute_filphi(const FilteredPhiModule& d, const std::vector<std::string>& outputs, Table& t, Json& res) {
  if (wants(outputs, "cohomology")) {
    const MFPhiCohomology c = rhom_mfphi(d);
    t.row("H0", std::to_string(c.h0_dim()));
    t.row("H1", std::to_string(c.h1_dim()));
    res["cohomology"] = {{"H0", c.h0_dim()}, {"H1", c.h1_dim()}};
  }
  if (wants(outputs, "admissibility")) {
    Json a;
    a["newton"] = newton_number(d);
    t.row("newton number", std::to_string(newton_number(d)));
    if (d.filtration().is_honest()) {
      const Admissibility w = is_weakly_admissible(d);
      a["hodge"] = hodge_number(d);
      a["weakly_admissible"] = to_string(w);
      t.row("hodge number", std::to_string(hodge_number(d)));
      t.row("weakly admissible", to_string(w));
    } else {
      a["hodge"] = nullptr;
      a["weakly_admissible"] = nullptr;
      t.row("hodge number", "n/a (filtration not honest)");
      t.row("weakly admissible", "n/a (filtration not honest)");
    }
    res["admissibility"] = a;
  }
}

void compute_square(const FilteredPhiModule& d, const std::vector<std::string>& outputs, Table& t, Json& res) {
  const SquareData s = corners(d);
  if (wants(outputs, "cohomology")) {
    Json c;
    const std::pair<const char*, const CochainComplex*> named[] = {{"A", &s.a}, {"B", &s.b}, {"C", &s.c}, {"D", &s.d}};
    for (const auto& [name, cx] : named) {
      const CohomologyDims h = cohomology_dims(*cx);
      c[name] = {h.h0, h.h1};
      t.row(std::string("corner ") + name, pair_str(h.h0, h.h1));
    }
    const FMFibre f = fm_fibre(d);
    c["fibre"] = {f.h0_dim(), f.h1_dim};
    t.row("fibre of 1 - phi", pair_str(f.h0_dim(), f.h1_dim));
    res["cohomology"] = c;
  }
  if (wants(outputs, "residuals")) {
    const CartesianReport r = verify_cartesian(s);
    Json j;
    j["commutativity_defect"] = r.commutativity_defect;
    if (r.total_cohomology) {
      j["total_cohomology"] = *r.total_cohomology;
      t.row("total cohomology", list_str(std::vector<Index>(r.total_cohomology->begin(), r.total_cohomology->end())));
    } else {
      j["total_cohomology"] = nullptr;
    }
    j["cartesian"] = r.is_zero();
    t.row("commutativity defect", std::to_string(r.commutativity_defect));
    t.row("cartesian", r.is_zero() ? "yes" : "no");
    res["residuals"] = j;
  }
}

void compute_fgauge(const FpGauge& g, const std::vector<std::string>& outputs, Table& t, Json& res) {
  validate(g).require("fgauge");
  res["window"] = {g.lo(), g.hi()};
  t.row("window", "[" + std::to_string(g.lo()) + ", " + std::to_string(g.hi()) + "]");
  if (wants(outputs, "cohomology")) {
    Json c;
    if (g.lo() <= 0 && g.hi() >= 0) {
      const ModuleHomology h = syntomic_cohomology(g);
      c["H0"] = h.h0.describe();
      c["H1"] = h.h1.describe();
      t.row("H0", h.h0.describe());
      t.row("H1", h.h1.describe());
    } else {
      c["H0"] = nullptr;
      c["H1"] = nullptr;
      t.row("H0, H1", "n/a (window does not contain 0)");
    }
    const PhiCohomology r = rhom_phi(rational_realization(g));
    c["rational"] = {{"H0", r.h0_dim()}, {"H1", r.h1_dim()}};
    t.row("rational H0, H1", pair_str(r.h0_dim(), r.h1_dim()));
    res["cohomology"] = c;
  }
  if (wants(outputs, "weights")) {
    const std::vector<int> w = hodge_tate_weights(g);
    res["weights"] = w;
    t.row("Hodge-Tate weights", list_str(w));
  }
  if (wants(outputs, "residuals")) {
    const std::vector<int> f = mod_p_injectivity_failures(g);
    res["residuals"] = {{"mod_p_injectivity_failures", f}};
    t.row("Fil^i/p -> Fil^{i-1}/p not injective at", list_str(f));
  }
}

void compute_reduced(const ReducedFGauge& g, const std::vector<std::string>& outputs, Table& t, Json& res) {
  if (!wants(outputs, "cohomology")) return;
  validate(g).require("reduced");
  Json c;
  auto put = [&](const char* name, const FpHomology& h) {
    c[name] = {h.h0, h.h1};
    t.row(name, pair_str(h.h0, h.h1));
  };
  put("dR,+", coh_dRplus(g.drp));
  put("HT,c", coh_HTc(g.htc));
  put("dR", coh_dR(restrict_dRplus_to_dR(g.drp)));
  put("Hod", coh_Hod(restrict_dRplus_to_Hod(g.drp)));
  const ReducedCohomology h = reduced_syntomic_cohomology(g);
  c["total"] = {h.h0, h.h1, h.h2};
  t.row("total", list_str(std::vector<Index>{h.h0, h.h1, h.h2}));
  res["cohomology"] = c;
}

void compute_higgs(const HiggsJob& job, const std::vector<std::string>& outputs, Table& t, Json& res) {
  if (!wants(outputs, "cohomology")) return;
  check_higgs(job.module).require("higgs");
  Json c = Json::array();
  for (int i : job.degrees) {
    std::vector<Index> dims;
    for (const auto& [k, v] : hodge_cohomology(job.module, i)) dims.push_back(v);
    c.push_back({{"degree", i}, {"H", dims}});
    t.row("degree " + std::to_string(i), list_str(dims));
  }
  res["cohomology"] = c;
}

LawReport check_only(const std::string& kind, const Node& payload, Prime p) {
  if (kind == "filphi") {
    parse_filphi(payload, p);
    return {};
  }
  if (kind == "square") {
    corners(parse_filphi(payload, p));
    return {};
  }
  if (kind == "fgauge") return validate(parse_fgauge(payload, p));
  if (kind == "reduced") return validate(parse_reduced(payload, p));
  return check_higgs(parse_higgs(payload, p).module);
}

Prime resolve_prime(const Node& root, std::optional<std::int64_t> override_p) {
  std::optional<std::int64_t> value;
  if (root.has("prime")) value = root.at("prime").integer();
  if (override_p) {
    if (value && *value != *override_p)
      throw SchemaError("prime", "job says p = " + std::to_string(*value) + " but --prime is " +
                                     std::to_string(*override_p));
    value = override_p;
  }
  if (!value) throw SchemaError("prime", "missing (give it in the job or with --prime)");
  try {
    return Prime(*value);
  } catch (const PreconditionError& e) {
    throw SchemaError("prime", e.what());
  }
}

}  // namespace

JobOutcome run_job(const std::string& label, const std::string& text, std::optional<std::int64_t> prime_override,
                   Mode mode) {
  JobOutcome out;
  out.report = {{"job", label}};
  Json input;
  try {
    input = Json::parse(text);
  } catch (const Json::parse_error& e) {
    out.code = ExitCode::schema;
    out.message = label + ": schema error: not valid JSON (" + e.what() + ")";
    out.report["status"] = "schema_error";
    out.report["message"] = out.message;
    return out;
  }
  out.report["input"] = input;
  try {
    const Node root(input, "");
    root.allow_only({"format", "prime", "kind", "payload", "outputs"});
    if (root.at("format").integer() != 1) throw SchemaError("format", "only format 1 is supported");
    const std::string kind = root.at("kind").string();
    if (kind != "filphi" && kind != "square" && kind != "fgauge" && kind != "reduced" && kind != "higgs")
      throw SchemaError("kind", "unknown kind \"" + kind + "\"");
    const Prime p = resolve_prime(root, prime_override);
    std::vector<std::string> outputs = allowed_outputs(kind);
    if (root.has("outputs")) {
      const Node o = root.at("outputs");
      o.require_array();
      outputs.clear();
      for (std::size_t k = 0; k < o.size(); ++k) {
        const std::string name = o.at(k).string();
        if (!wants(allowed_outputs(kind), name.c_str()))
          throw SchemaError(o.at(k).path(), "output \"" + name + "\" is not available for kind " + kind);
        outputs.push_back(name);
      }
    }
    const Node payload = root.at("payload");
    payload.require_object();
    const std::string title = label + "  (" + kind + ", p = " + std::to_string(p.value()) + ")";
    Table table;
    Json results = Json::object();

    if (mode == Mode::check) {
      const LawReport r = check_only(kind, payload, p);
      r.require(kind);
      table.row("laws", "ok");
    } else if (kind == "filphi") {
      compute_filphi(parse_filphi(payload, p), outputs, table, results);
    } else if (kind == "square") {
      compute_square(parse_filphi(payload, p), outputs, table, results);
    } else if (kind == "fgauge") {
      compute_fgauge(parse_fgauge(payload, p), outputs, table, results);
    } else if (kind == "reduced") {
      compute_reduced(parse_reduced(payload, p), outputs, table, results);
    } else {
      compute_higgs(parse_higgs(payload, p), outputs, table, results);
    }
    out.table = table.render(title);
    out.report["status"] = "ok";
    if (mode == Mode::compute) out.report["results"] = results;
  } catch (const SchemaError& e) {
    out.code = ExitCode::schema;
    out.message = label + ": schema error at " + e.what();
  } catch (const LawViolation& e) {
    out.code = ExitCode::law;
    out.message = label + ": law violated: " + e.what();
  } catch (const PreconditionError& e) {
    out.code = ExitCode::schema;
    out.message = label + ": schema error: " + e.what();
  } catch (const ContextMismatch& e) {
    out.code = ExitCode::schema;
    out.message = label + ": schema error: " + e.what();
  } catch (const ParseError& e) {
    out.code = ExitCode::schema;
    out.message = label + ": schema error: " + e.what();
  }
  if (out.code != ExitCode::ok) {
    out.report["status"] = out.code == ExitCode::law ? "law_violation" : "schema_error";
    out.report["message"] = out.message;
  }
  return out;
}

std::string twist_table(const std::string& kind, std::int64_t prime, int from, int to) {
  const Prime p(prime);
  std::ostringstream os;
  auto cell = [](const std::string& s, int w) {
    std::ostringstream c;
    c << std::left << std::setw(w) << s;
    return c.str();
  };
  if (kind == "filphi") {
    os << cell("n", 6) << cell("H0", 6) << "H1\n";
    for (int n = from; n <= to; ++n) {
      const MFPhiCohomology c = rhom_mfphi(tate(p, n));
      os << cell(std::to_string(n), 6) << cell(std::to_string(c.h0_dim()), 6) << std::to_string(c.h1_dim()) << "\n";
    }
  } else if (kind == "fgauge") {
    os << cell("n", 6) << cell("H0", 12) << cell("H1", 12) << "weights\n";
    for (int n = from; n <= to; ++n) {
      const FpGauge g = gauge_from_fcrystal(breuil_kisin_crystal(p, n));
      const ModuleHomology h = syntomic_cohomology(g);
      os << cell(std::to_string(n), 6) << cell(h.h0.describe(), 12) << cell(h.h1.describe(), 12)
         << list_str(hodge_tate_weights(g)) << "\n";
    }
  } else if (kind == "reduced") {
    os << cell("n", 6) << cell("H0", 6) << cell("H1", 6) << "H2\n";
    for (int n = from; n <= to; ++n) {
      const ReducedCohomology h = reduced_syntomic_cohomology(bk_reduced(p, n));
      os << cell(std::to_string(n), 6) << cell(std::to_string(h.h0), 6) << cell(std::to_string(h.h1), 6) << h.h2
         << "\n";
    }
  } else {
    throw std::invalid_argument("table: kind must be filphi, fgauge or reduced");
  }
  return os.str();
}

}  // namespace gaugeworks::cli
