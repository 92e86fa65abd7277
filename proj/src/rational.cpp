#include "opcomm/rational.hpp"

#include <stdexcept>

#include "opcomm/errors.hpp"

namespace opcomm {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) {
    throw Error("rational with zero denominator");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(long num, long den) {
  return make_rational(Integer(num), Integer(den));
}

Rational rational_from_string(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) {
    throw Error("malformed rational: '" + text + "'");
  }
  if (r.get_den() == 0) {
    throw Error("rational with zero denominator: '" + text + "'");
  }
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& value) {
  return value.get_str();
}

Integer pow2(unsigned exponent) {
  return Integer(Integer(1) << exponent);
}

DyadicRational::DyadicRational(Integer numerator, unsigned exponent)
    : num_(std::move(numerator)), exp_(exponent) {
  while (exp_ > 0 && mpz_even_p(num_.get_mpz_t())) {
    num_ >>= 1;
    --exp_;
  }
}

DyadicRational DyadicRational::from_rational(const Rational& value) {
  Integer den = value.get_den();
  unsigned exp = 0;
  while (mpz_even_p(den.get_mpz_t())) {
    den >>= 1;
    ++exp;
  }
  if (den != 1) {
    throw InvalidIntervalError("denominator " + value.get_den().get_str() +
                               " is not a power of two");
  }
  return DyadicRational(value.get_num(), exp);
}

Rational DyadicRational::to_rational() const {
  return make_rational(num_, pow2(exp_));
}

DyadicRational DyadicRational::operator+(const DyadicRational& other) const {
  unsigned exp = std::max(exp_, other.exp_);
  Integer lhs = num_ << (exp - exp_);
  Integer rhs = other.num_ << (exp - other.exp_);
  return DyadicRational(Integer(lhs + rhs), exp);
}

DyadicRational DyadicRational::operator-(const DyadicRational& other) const {
  unsigned exp = std::max(exp_, other.exp_);
  Integer lhs = num_ << (exp - exp_);
  Integer rhs = other.num_ << (exp - other.exp_);
  return DyadicRational(Integer(lhs - rhs), exp);
}

bool DyadicRational::operator==(const DyadicRational& other) const {
  return exp_ == other.exp_ && num_ == other.num_;
}

bool DyadicRational::operator<(const DyadicRational& other) const {
  unsigned exp = std::max(exp_, other.exp_);
  return Integer(num_ << (exp - exp_)) < Integer(other.num_ << (exp - other.exp_));
}

}  // namespace opcomm
