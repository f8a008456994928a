#include "gaugeworks/higgs.hpp"

#include <map>
#include <string>

namespace gaugeworks {

namespace {

FpMatrix product(const FpMatrix& a, const FpMatrix& b, Prime p) {
  if (a.cols() == 0) return fp_zero(a.rows(), b.cols(), p);
  return a * b;
}

// k-subsets of {0..d-1} as bitmasks, lexicographic in their sorted elements.
std::vector<unsigned> subsets(int d, int k) {
  std::vector<unsigned> out;
  std::vector<int> pick(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) pick[j] = j;
  if (k > d) return out;
  for (;;) {
    unsigned mask = 0;
    for (int e : pick) mask |= 1u << e;
    out.push_back(mask);
    int j = k - 1;
    while (j >= 0 && pick[j] == d - k + j) --j;
    if (j < 0) return out;
    ++pick[j];
    for (int l = j + 1; l < k; ++l) pick[l] = pick[l - 1] + 1;
  }
}

int popcount_below(unsigned mask, int j) { return __builtin_popcount(mask & ((1u << j) - 1)); }

}  // namespace

GradedHiggsModule::GradedHiggsModule(Prime p, int d, int lo, std::vector<Index> dims,
                                     std::vector<std::vector<FpMatrix>> phi)
    : p_(p), d_(d), lo_(lo), dims_(std::move(dims)), phi_(std::move(phi)) {
  if (d_ < 0 || d_ > 16) throw PreconditionError("GradedHiggsModule: number of directions must lie in [0, 16]");
  if (static_cast<int>(phi_.size()) != d_)
    throw PreconditionError("GradedHiggsModule: expected " + std::to_string(d_) + " fields");
  for (int k = 0; k < d_; ++k) {
    if (phi_[k].size() != dims_.size())
      throw PreconditionError("GradedHiggsModule: field " + std::to_string(k + 1) + " needs one matrix per degree");
    for (std::size_t j = 0; j < dims_.size(); ++j) {
      const int i = lo_ + static_cast<int>(j);
      if (phi_[k][j].rows() != dim(i - 1) || phi_[k][j].cols() != dims_[j])
        throw PreconditionError("GradedHiggsModule: field " + std::to_string(k + 1) + " has the wrong shape at i = " +
                                std::to_string(i));
    }
  }
}

GradedHiggsModule GradedHiggsModule::trivial(Prime p, int d, int lo, std::vector<Index> dims) {
  std::vector<std::vector<FpMatrix>> phi(static_cast<std::size_t>(d));
  for (auto& f : phi)
    for (std::size_t j = 0; j < dims.size(); ++j) {
      const Index below = j == 0 ? 0 : dims[j - 1];
      f.push_back(fp_zero(below, dims[j], p));
    }
  return GradedHiggsModule(p, d, lo, std::move(dims), std::move(phi));
}

Index GradedHiggsModule::dim(int i) const {
  if (i < lo_ || i > hi()) return 0;
  return dims_[static_cast<std::size_t>(i - lo_)];
}

Index GradedHiggsModule::total_dim() const {
  Index n = 0;
  for (Index x : dims_) n += x;
  return n;
}

FpMatrix GradedHiggsModule::phi(int k, int i) const {
  if (i < lo_ || i > hi()) return fp_zero(dim(i - 1), dim(i), p_);
  return phi_[static_cast<std::size_t>(k)][static_cast<std::size_t>(i - lo_)];
}

LawReport check_higgs(const GradedHiggsModule& m) {
  LawReport r;
  const Prime p = m.prime();
  for (int i = m.lo(); i <= m.hi(); ++i)
    for (int j = 0; j < m.directions(); ++j)
      for (int k = j + 1; k < m.directions(); ++k) {
        const FpMatrix jk = product(m.phi(j, i - 1), m.phi(k, i), p);
        const FpMatrix kj = product(m.phi(k, i - 1), m.phi(j, i), p);
        if (!is_zero(FpMatrix(jk - kj)))
          r.violations.push_back("phi_" + std::to_string(j + 1) + " phi_" + std::to_string(k + 1) + " = phi_" +
                                 std::to_string(k + 1) + " phi_" + std::to_string(j + 1) + " failed at i = " +
                                 std::to_string(i));
      }

  // Images of all monomials of length L, degree by degree.
  std::map<int, FpMatrix> image;
  for (int i = m.lo(); i <= m.hi(); ++i) image[i] = fp_identity(m.dim(i), p);
  const Index n = m.total_dim();
  for (Index len = 1; len <= n + 1 && !image.empty(); ++len) {
    std::map<int, FpMatrix> next;
    for (const auto& [i, w] : image) {
      if (m.dim(i - 1) == 0 || w.cols() == 0) continue;
      FpMatrix cols(m.dim(i - 1), 0);
      for (int k = 0; k < m.directions(); ++k) {
        const FpMatrix img = product(m.phi(k, i), w, p);
        FpMatrix wide(cols.rows(), cols.cols() + img.cols());
        wide << cols, img;
        cols = wide;
      }
      FpMatrix span = column_space(cols);
      if (span.cols() > 0) next[i - 1] = std::move(span);
    }
    image = std::move(next);
  }
  if (!image.empty())
    r.violations.push_back("monomials in the fields of length " + std::to_string(n + 1) + " do not vanish");
  return r;
}

std::vector<FpMatrix> koszul_differentials(const GradedHiggsModule& m, int i) {
  const Prime p = m.prime();
  const int d = m.directions();
  std::vector<FpMatrix> out;
  for (int k = 0; k < d; ++k) {
    const auto src = subsets(d, k), dst = subsets(d, k + 1);
    const Index a = m.dim(i - k), b = m.dim(i - k - 1);
    std::map<unsigned, Index> where;
    for (std::size_t t = 0; t < dst.size(); ++t) where[dst[t]] = static_cast<Index>(t);
    FpMatrix diff = fp_zero(b * static_cast<Index>(dst.size()), a * static_cast<Index>(src.size()), p);
    for (std::size_t s = 0; s < src.size(); ++s)
      for (int j = 0; j < d; ++j) {
        if (src[s] & (1u << j)) continue;
        FpMatrix block = m.phi(j, i - k);
        if (popcount_below(src[s], j) % 2) block = -block;
        diff.block(where[src[s] | (1u << j)] * b, static_cast<Index>(s) * a, b, a) = block;
      }
    out.push_back(std::move(diff));
  }
  return out;
}

std::vector<std::pair<int, Index>> hodge_cohomology(const GradedHiggsModule& m, int i) {
  check_higgs(m).require("hodge_cohomology");
  const int d = m.directions();
  const auto diffs = koszul_differentials(m, i);
  std::vector<Index> ranks(static_cast<std::size_t>(d), 0);
  for (int k = 0; k < d; ++k) ranks[k] = rank(diffs[k]);
  std::vector<std::pair<int, Index>> out;
  for (int k = 0; k <= d; ++k) {
    const Index size = m.dim(i - k) * static_cast<Index>(subsets(d, k).size());
    const Index in = k > 0 ? ranks[k - 1] : 0, outgoing = k < d ? ranks[k] : 0;
    out.emplace_back(k, size - in - outgoing);
  }
  return out;
}

}  // namespace gaugeworks
