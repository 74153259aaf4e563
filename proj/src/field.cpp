#include "amalg/field.hpp"

#include <cctype>

namespace amalg {

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InputError("division by zero in Q");
  q_ /= o.q_;
  return *this;
}

ModP ModP::inverse() const {
  if (v_ == 0) throw InputError("division by zero in F" + std::to_string(p_));
  // extended Euclid on signed 64-bit values
  std::int64_t a = v_, m = p_, x0 = 1, x1 = 0;
  while (m != 0) {
    std::int64_t q = a / m;
    std::int64_t t = a - q * m;
    a = m;
    m = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  std::int64_t r = x0 % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return ModP(static_cast<std::uint32_t>(r), p_);
}

RationalField::Elem RationalField::from_fraction(const mpz_class& num, const mpz_class& den) const {
  if (den == 0) throw InputError("zero denominator");
  return Rational(mpq_class(num, den));
}

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t prime) : p(prime) {
  if (!is_prime(prime)) throw InputError("field characteristic " + std::to_string(prime) + " is not prime");
}

ModP PrimeField::from_int(long long n) const {
  long long r = n % static_cast<long long>(p);
  if (r < 0) r += p;
  return ModP(static_cast<std::uint32_t>(r), p);
}

ModP PrimeField::from_integer(const mpz_class& n) const {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), p);
  return ModP(static_cast<std::uint32_t>(r.get_ui()), p);
}

ModP PrimeField::from_fraction(const mpz_class& num, const mpz_class& den) const {
  ModP d = from_integer(den);
  if (d.is_zero()) throw InputError("denominator vanishes in " + name());
  return from_integer(num) / d;
}

CoefficientField CoefficientField::prime(std::uint32_t p) {
  if (!is_prime(p) || p >= (1u << 31))
    throw InputError("characteristic must be 0 or a prime below 2^31, got " + std::to_string(p));
  return CoefficientField(p);
}

CoefficientField CoefficientField::parse(const std::string& text) {
  if (text == "Q") return rationals();
  if (text.size() >= 2 && text[0] == 'F') {
    std::uint64_t p = 0;
    for (std::size_t i = 1; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i])) || p > (1ull << 32))
        throw InputError("bad field '" + text + "'");
      p = p * 10 + static_cast<std::uint64_t>(text[i] - '0');
    }
    if (p >= (1ull << 31)) throw InputError("field characteristic too large: " + text);
    return prime(static_cast<std::uint32_t>(p));
  }
  throw InputError("unknown field '" + text + "' (expected Q or F<p>)");
}

}  // namespace amalg
