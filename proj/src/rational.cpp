#include "pf/rational.hpp"

#include <ostream>

#include "pf/errors.hpp"

namespace pf {

Rational::Rational(const Integer& num, const Integer& den) : v_(num, den) {
  if (sgn(den) == 0) throw DomainError("Rational: zero denominator");
  v_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

Rational Rational::from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    throw DomainError("Rational: cannot parse '" + s + "'");
  }
}

Rational Rational::operator-() const { return Rational(mpq_class(-v_)); }

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(v_))); }

Rational Rational::pow(unsigned k) const {
  mpq_class r(1);
  mpq_class base = v_;
  unsigned e = k;
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return Rational(std::move(r));
}

Rational Rational::inverse() const {
  if (is_zero()) throw DomainError("Rational: inverse of zero");
  return Rational(mpq_class(1 / v_));
}

std::string Rational::to_string() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace pf
