#include "egvi/cert/rational.hpp"

#include "egvi/errors.hpp"

namespace egvi::cert {

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw InvalidArgumentError("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
  if (sgn(value_.get_den()) == 0) throw InvalidArgumentError("rational with zero denominator");
  value_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  mpq_class v;
  if (v.set_str(text, 10) != 0 || sgn(v.get_den()) == 0)
    throw InvalidArgumentError("cannot parse '" + text + "' as a rational");
  v.canonicalize();
  return Rational(v);
}

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InvalidArgumentError("division by zero rational");
  value_ /= o.value_;
  return *this;
}

}  // namespace egvi::cert
