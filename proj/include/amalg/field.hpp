#pragma once

// Exact coefficient fields: the rationals (GMP fractions) and prime fields.
//
// Algebra code is templated on a field type F exposing
//   using Elem;  Elem zero(), one(), from_int(), from_fraction();
//   std::uint32_t characteristic();  std::string name();
// Elements are plain values with the usual arithmetic operators.

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "amalg/error.hpp"

namespace amalg {

class Rational {
 public:
  Rational() = default;
  explicit Rational(long long n) : q_(static_cast<long>(n)) {}
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  const mpq_class& value() const { return q_; }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  std::string str() const { return q_.get_str(); }

 private:
  mpq_class q_;
};

/// Residue modulo a prime.  The modulus travels with the value so that
/// elements are self-contained; mixing moduli is a logic error.
class ModP {
 public:
  ModP() = default;
  ModP(std::uint32_t value, std::uint32_t p) : v_(value), p_(p) {}

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  ModP& operator+=(const ModP& o) {
    std::uint64_t s = std::uint64_t(v_) + o.v_;
    v_ = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    return *this;
  }
  ModP& operator-=(const ModP& o) {
    v_ = v_ >= o.v_ ? v_ - o.v_ : static_cast<std::uint32_t>(std::uint64_t(v_) + p_ - o.v_);
    return *this;
  }
  ModP& operator*=(const ModP& o) {
    v_ = static_cast<std::uint32_t>(std::uint64_t(v_) * o.v_ % p_);
    return *this;
  }
  ModP& operator/=(const ModP& o) { return *this *= o.inverse(); }
  ModP inverse() const;

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend ModP operator-(const ModP& a) { return ModP(a.v_ == 0 ? 0 : a.p_ - a.v_, a.p_); }
  friend bool operator==(const ModP& a, const ModP& b) { return a.v_ == b.v_; }
  friend bool operator!=(const ModP& a, const ModP& b) { return a.v_ != b.v_; }

  std::string str() const { return std::to_string(v_); }

 private:
  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

struct RationalField {
  using Elem = Rational;
  Elem zero() const { return Rational(); }
  Elem one() const { return Rational(1); }
  Elem from_int(long long n) const { return Rational(n); }
  Elem from_integer(const mpz_class& n) const { return Rational(mpq_class(n)); }
  Elem from_fraction(const mpz_class& num, const mpz_class& den) const;
  std::uint32_t characteristic() const { return 0; }
  std::string name() const { return "Q"; }
};

struct PrimeField {
  PrimeField() = default;  // F2; placeholder for default-constructed containers
  explicit PrimeField(std::uint32_t prime);
  using Elem = ModP;
  std::uint32_t p = 2;
  Elem zero() const { return ModP(0, p); }
  Elem one() const { return ModP(1 % p, p); }
  Elem from_int(long long n) const;
  Elem from_integer(const mpz_class& n) const;
  Elem from_fraction(const mpz_class& num, const mpz_class& den) const;
  std::uint32_t characteristic() const { return p; }
  std::string name() const { return "F" + std::to_string(p); }
};

bool is_prime(std::uint32_t n);

/// Runtime description of a coefficient field: characteristic 0 or a prime.
class CoefficientField {
 public:
  static CoefficientField rationals() { return CoefficientField(0); }
  static CoefficientField prime(std::uint32_t p);
  /// Parses "Q", "F2", "F<p>".
  static CoefficientField parse(const std::string& text);

  std::uint32_t characteristic() const { return characteristic_; }
  bool is_rational() const { return characteristic_ == 0; }
  std::string name() const {
    return characteristic_ == 0 ? "Q" : "F" + std::to_string(characteristic_);
  }
  friend bool operator==(const CoefficientField&, const CoefficientField&) = default;

 private:
  explicit CoefficientField(std::uint32_t c) : characteristic_(c) {}
  std::uint32_t characteristic_;
};

/// Calls fn with a concrete field object (RationalField or PrimeField).
template <class Fn>
decltype(auto) visit_field(const CoefficientField& cf, Fn&& fn) {
  if (cf.is_rational()) return fn(RationalField{});
  return fn(PrimeField(cf.characteristic()));
}

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }
inline std::ostream& operator<<(std::ostream& os, const ModP& r) { return os << r.str(); }

}  // namespace amalg
