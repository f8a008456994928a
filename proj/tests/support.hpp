// Test-only helpers: literal matrix builders, seeded randomness, and oracles
// that share no code with the library's elimination routines.

#pragma once

#include <cstdlib>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "gaugeworks/linalg.hpp"

namespace gw_test {

using gaugeworks::Fp;
using gaugeworks::FpMatrix;
using gaugeworks::Index;
using gaugeworks::Integer;
using gaugeworks::Prime;
using gaugeworks::QMatrix;
using gaugeworks::Rational;

inline QMatrix q(std::initializer_list<std::initializer_list<Rational>> rows) {
  const auto r = static_cast<Index>(rows.size());
  const auto c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  QMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline FpMatrix fp(Prime p, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  const auto r = static_cast<Index>(rows.size());
  const auto c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  FpMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (auto x : row) m(i, j++) = Fp(x, p);
    ++i;
  }
  return m;
}

/// Seed from GAUGEWORKS_SEED, else a fixed default.
inline std::uint64_t corpus_seed() {
  if (const char* s = std::getenv("GAUGEWORKS_SEED")) return std::stoull(s);
  return 20240917ULL;
}

class Rng {
public:
  explicit Rng(std::uint64_t salt) : gen_(corpus_seed() ^ (salt * 0x9E3779B97F4A7C15ULL)) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin(double p_true = 0.5) { return std::bernoulli_distribution(p_true)(gen_); }

  /// Random rational with small numerator and denominator, valuation at p
  /// between 0 and max_val (so always p-local), zero with probability zero_p.
  Rational plocal(Prime p, int max_val, double zero_p = 0.2) {
    if (coin(zero_p)) return 0;
    Rational x = unit(p);
    return x * gaugeworks::prime_power(p, uniform(0, max_val));
  }
  /// A p-adic unit n/d.
  Rational unit(Prime p) {
    for (;;) {
      const int n = uniform(-9, 9), d = uniform(1, 5);
      if (n % p.value() != 0 && d % p.value() != 0) return Rational(n, d);
    }
  }
  Rational small_rational() {
    if (coin(0.25)) return 0;
    return Rational(uniform(-6, 6), uniform(1, 3));
  }
  Fp fp(Prime p) { return Fp(uniform(0, static_cast<int>(p.value()) - 1), p); }

  QMatrix plocal_matrix(Prime p, Index r, Index c, int max_val) {
    QMatrix m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m(i, j) = plocal(p, max_val);
    return m;
  }
  QMatrix rational_matrix(Index r, Index c) {
    QMatrix m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m(i, j) = small_rational();
    return m;
  }
  FpMatrix fp_matrix(Prime p, Index r, Index c) {
    FpMatrix m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m(i, j) = fp(p);
    return m;
  }
  /// Invertible over Z_(p): unit upper-triangular times unit lower-triangular
  /// with p-local off-diagonal entries, then a random permutation.
  QMatrix unimodular(Prime p, Index n) {
    QMatrix up = gaugeworks::identity<Rational>(n), lo = gaugeworks::identity<Rational>(n);
    for (Index i = 0; i < n; ++i) {
      up(i, i) = unit(p);
      for (Index j = i + 1; j < n; ++j) {
        up(i, j) = plocal(p, 2);
        lo(j, i) = plocal(p, 2);
      }
    }
    QMatrix m = up * lo;
    for (Index i = n - 1; i > 0; --i) m.row(i).swap(m.row(uniform(0, static_cast<int>(i))));
    return m;
  }
  FpMatrix fp_invertible(Prime p, Index n) {
    for (;;) {
      FpMatrix m = fp_matrix(p, n, n);
      if (gaugeworks::is_invertible(m)) return m;
    }
  }

  std::mt19937_64& engine() { return gen_; }

private:
  std::mt19937_64 gen_;
};

/// Rank by plain forward elimination over the rationals: a second, textbook
/// implementation used only as an oracle.
inline Index oracle_rank(QMatrix a) {
  Index r = 0;
  for (Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    Index best = -1;
    for (Index i = r; i < a.rows(); ++i)
      if (a(i, c) != 0) {
        best = i;
        break;
      }
    if (best < 0) continue;
    for (Index j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(best, j));
    for (Index i = r + 1; i < a.rows(); ++i) {
      const Rational f = a(i, c) / a(r, c);
      for (Index j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

/// Number of x in F_p^n with m x = 0, by enumerating all p^n vectors.
inline std::uint64_t brute_force_kernel_size(const FpMatrix& m, Prime p) {
  const auto n = static_cast<std::size_t>(m.cols());
  const auto pv = static_cast<std::uint64_t>(p.value());
  std::vector<std::uint64_t> x(n, 0);
  std::uint64_t count = 0;
  for (;;) {
    bool zero = true;
    for (Index i = 0; i < m.rows() && zero; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc = (acc + m(i, static_cast<Index>(j)).value() * x[j]) % pv;
      zero = acc == 0;
    }
    if (zero) ++count;
    std::size_t k = 0;
    while (k < n && ++x[k] == pv) x[k++] = 0;
    if (k == n) break;
  }
  return count;
}

/// dim ker of an F_p matrix by enumeration (log_p of the kernel size).
inline Index brute_force_nullity(const FpMatrix& m, Prime p) {
  std::uint64_t size = brute_force_kernel_size(m, p);
  Index d = 0;
  while (size > 1) {
    size /= static_cast<std::uint64_t>(p.value());
    ++d;
  }
  return d;
}

inline Index brute_force_rank(const FpMatrix& m, Prime p) { return m.cols() - brute_force_nullity(m, p); }

}  // namespace gw_test
