#include "gaugeworks/scalar.hpp"

#include <charconv>
#include <ostream>

namespace gaugeworks {

namespace {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t reduce_signed(std::int64_t v, std::uint64_t m) {
  const auto sm = static_cast<std::int64_t>(m);
  std::int64_t r = v % sm;
  if (r < 0) r += sm;
  return static_cast<std::uint64_t>(r);
}

}  // namespace

Prime::Prime(std::int64_t value) : value_(value) {
  // keep products of two residues inside 64 bits
  if (value > (std::int64_t{1} << 31) || !is_prime(value))
    throw PreconditionError("prime p must be a prime number below 2^31, got " +
                            std::to_string(value));
}

void require_same_prime(Prime a, Prime b, std::string_view where) {
  if (a != b)
    throw ContextMismatch(std::string(where) + ": objects over p = " + std::to_string(a.value()) +
                          " and p = " + std::to_string(b.value()) + " were combined");
}

int Valuation::value() const {
  if (!value_) throw PreconditionError("valuation of zero is +infinity");
  return *value_;
}

int valuation(const Integer& n, Prime p) {
  Integer m = abs(n);
  const Integer pp = p.value();
  int v = 0;
  while (m % pp == 0) {
    m /= pp;
    ++v;
  }
  return v;
}

Valuation valuation(const Rational& q, Prime p) {
  if (q == 0) return Valuation::infinity();
  return Valuation::finite(valuation(Integer(numerator(q)), p) -
                           valuation(Integer(denominator(q)), p));
}

Rational prime_power(Prime p, int k) {
  Integer base = 1;
  const Integer pp = p.value();
  for (int i = 0; i < (k < 0 ? -k : k); ++i) base *= pp;
  return k >= 0 ? Rational(base) : Rational(Integer(1), base);
}

bool is_p_local(const Rational& q, Prime p) {
  return Integer(denominator(q)) % Integer(p.value()) != 0;
}

PLocal::PLocal(Rational value, Prime p) : value_(std::move(value)), p_(p) {
  if (!is_p_local(value_, p_))
    throw LawViolation("entry " + to_string(value_) + " is not p-local for p = " +
                       std::to_string(p_.value()));
}

// ---- F_p ----

Fp::Fp(int v) : v_(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))), m_(0) {}

Fp::Fp(std::int64_t v, Prime p)
    : v_(reduce_signed(v, static_cast<std::uint64_t>(p.value()))),
      m_(static_cast<std::uint64_t>(p.value())) {}

std::uint64_t Fp::join(const Fp& o) const {
  if (m_ != 0 && o.m_ != 0 && m_ != o.m_)
    throw ContextMismatch("F_p arithmetic mixed p = " + std::to_string(m_) + " and p = " +
                          std::to_string(o.m_));
  return m_ != 0 ? m_ : o.m_;
}

Fp& Fp::operator+=(const Fp& o) {
  const std::uint64_t m = join(o);
  if (m == 0) {
    v_ = static_cast<std::uint64_t>(static_cast<std::int64_t>(v_) + static_cast<std::int64_t>(o.v_));
    return *this;
  }
  const std::uint64_t a = m_ == 0 ? reduce_signed(static_cast<std::int64_t>(v_), m) : v_;
  const std::uint64_t b = o.m_ == 0 ? reduce_signed(static_cast<std::int64_t>(o.v_), m) : o.v_;
  v_ = (a + b) % m;
  m_ = m;
  return *this;
}

Fp Fp::operator-() const {
  if (m_ == 0) return Fp(static_cast<int>(-static_cast<std::int64_t>(v_)));
  Fp r = *this;
  r.v_ = v_ == 0 ? 0 : m_ - v_;
  return r;
}

Fp& Fp::operator-=(const Fp& o) { return *this += -o; }

Fp& Fp::operator*=(const Fp& o) {
  const std::uint64_t m = join(o);
  if (m == 0) {
    v_ = static_cast<std::uint64_t>(static_cast<std::int64_t>(v_) * static_cast<std::int64_t>(o.v_));
    return *this;
  }
  const std::uint64_t a = m_ == 0 ? reduce_signed(static_cast<std::int64_t>(v_), m) : v_;
  const std::uint64_t b = o.m_ == 0 ? reduce_signed(static_cast<std::int64_t>(o.v_), m) : o.v_;
  v_ = (a * b) % m;
  m_ = m;
  return *this;
}

Fp Fp::inverse() const {
  if (m_ == 0) {
    const auto s = static_cast<std::int64_t>(v_);
    if (s == 1 || s == -1) return *this;
    throw PreconditionError("inverse of an F_p literal with no modulus");
  }
  if (v_ == 0) throw PreconditionError("division by zero in F_p");
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = v_, e = m_ - 2;
  while (e) {
    if (e & 1) result = result * base % m_;
    base = base * base % m_;
    e >>= 1;
  }
  Fp r;
  r.v_ = result;
  r.m_ = m_;
  return r;
}

Fp& Fp::operator/=(const Fp& o) { return *this *= o.inverse(); }

std::ostream& operator<<(std::ostream& os, const Fp& x) {
  if (x.modulus() == 0) return os << static_cast<std::int64_t>(x.value());
  return os << x.value();
}

Fp reduce_mod_p(const Rational& q, Prime p) {
  if (!is_p_local(q, p))
    throw LawViolation("cannot reduce " + to_string(q) + " mod p = " + std::to_string(p.value()));
  const Integer pp = p.value();
  Integer num = Integer(numerator(q)) % pp;
  Integer den = Integer(denominator(q)) % pp;
  return Fp(num.convert_to<std::int64_t>(), p) / Fp(den.convert_to<std::int64_t>(), p);
}

// ---- text ----

namespace {
bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}
}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                               : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw ParseError("malformed rational \"" + std::string(text) + "\"");
  const Integer n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  Rational q(n, d);
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace gaugeworks
