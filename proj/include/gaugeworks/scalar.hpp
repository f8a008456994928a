// Exact scalars: rationals, the localization Z_(p), and the prime field F_p.

#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "gaugeworks/error.hpp"

namespace gaugeworks {

/// Arbitrary precision rational. Expression templates are disabled so the
/// type composes with Eigen's own expression machinery.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// A prime number fixing the computation context. Constructing one from a
/// composite or from a value below 2 throws.
class Prime {
public:
  explicit Prime(std::int64_t value);

  std::int64_t value() const noexcept { return value_; }
  friend bool operator==(Prime, Prime) = default;

private:
  std::int64_t value_;
};

void require_same_prime(Prime a, Prime b, std::string_view where);

/// p-adic valuation with a distinguished +infinity for zero.
class Valuation {
public:
  static Valuation infinity() noexcept { return Valuation{}; }
  static Valuation finite(int v) noexcept { return Valuation{v}; }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  /// Throws if infinite.
  int value() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.is_infinite() || b.is_infinite())
      return a.is_infinite() <=> b.is_infinite();
    return *a.value_ <=> *b.value_;
  }

private:
  Valuation() = default;
  explicit Valuation(int v) : value_(v) {}
  std::optional<int> value_;
};

int valuation(const Integer& n, Prime p);  // n != 0
Valuation valuation(const Rational& q, Prime p);

/// p^k as a rational, k of either sign.
Rational prime_power(Prime p, int k);

/// True when the reduced denominator of q is coprime to p.
bool is_p_local(const Rational& q, Prime p);

/// An element of Z_(p): a rational with denominator prime to p.
class PLocal {
public:
  PLocal(Rational value, Prime p);

  const Rational& value() const noexcept { return value_; }
  Prime prime() const noexcept { return p_; }
  Valuation valuation() const { return gaugeworks::valuation(value_, p_); }
  bool is_unit() const { return valuation() == Valuation::finite(0); }

  friend bool operator==(const PLocal& a, const PLocal& b) {
    return a.p_ == b.p_ && a.value_ == b.value_;
  }

private:
  Rational value_;
  Prime p_;
};

/// Element of F_p. The modulus travels with the value; a default-constructed
/// or integer-constructed element has modulus 0 ("unbound") and adopts the
/// modulus of whatever it is combined with. Combining two bound elements of
/// different moduli throws ContextMismatch.
class Fp {
public:
  Fp() = default;
  Fp(int v);  // NOLINT: unbound literal, needed by Eigen's Zero()/Identity()
  Fp(std::int64_t v, Prime p);

  std::uint64_t value() const noexcept { return v_; }
  std::uint64_t modulus() const noexcept { return m_; }
  bool is_zero() const noexcept { return v_ == 0; }

  Fp& operator+=(const Fp& o);
  Fp& operator-=(const Fp& o);
  Fp& operator*=(const Fp& o);
  Fp& operator/=(const Fp& o);
  Fp operator-() const;
  Fp inverse() const;

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend bool operator==(const Fp& a, const Fp& b) { return (a - b).v_ == 0; }

private:
  std::uint64_t join(const Fp& o) const;
  std::uint64_t v_ = 0;
  std::uint64_t m_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Fp& x);

/// Reduction Z_(p) -> F_p. Throws if q is not p-local.
Fp reduce_mod_p(const Rational& q, Prime p);

/// Exact parse of "[-]digits[/digits]". Throws ParseError on anything else.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

}  // namespace gaugeworks

namespace Eigen {
template <typename T> struct NumTraits;

template <> struct NumTraits<gaugeworks::Fp> {
  using Real = gaugeworks::Fp;
  using NonInteger = gaugeworks::Fp;
  using Nested = gaugeworks::Fp;
  using Literal = gaugeworks::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static Real highest() { return Real(0); }
  static Real lowest() { return Real(0); }
  static int digits10() { return 0; }
};
}  // namespace Eigen
