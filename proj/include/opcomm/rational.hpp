#pragma once

#include <gmpxx.h>

#include <string>

namespace opcomm {

/// Exact rational scalar used throughout the library.
using Rational = mpq_class;
using Integer = mpz_class;

/// num/den as a canonical Rational. Throws on den == 0.
Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long num, long den = 1);

/// Parses "num", "num/den" or "-num/den" (exact, arbitrary precision).
Rational rational_from_string(const std::string& text);

/// Canonical "num/den" rendering; integers print without the "/1".
std::string rational_to_string(const Rational& value);

/// 2^exponent as an Integer.
Integer pow2(unsigned exponent);

/// A rational with a power-of-two denominator, kept as numerator / 2^exponent
/// with the numerator odd unless the exponent is zero.
class DyadicRational {
public:
  DyadicRational() : num_(0), exp_(0) {}
  DyadicRational(Integer numerator, unsigned exponent);

  /// Converts an exact rational whose denominator is a power of two.
  /// Throws InvalidIntervalError otherwise.
  static DyadicRational from_rational(const Rational& value);

  const Integer& numerator() const { return num_; }
  unsigned exponent() const { return exp_; }

  Rational to_rational() const;
  std::string str() const { return rational_to_string(to_rational()); }

  DyadicRational operator+(const DyadicRational& other) const;
  DyadicRational operator-(const DyadicRational& other) const;
  bool operator==(const DyadicRational& other) const;
  bool operator!=(const DyadicRational& other) const { return !(*this == other); }
  bool operator<(const DyadicRational& other) const;

private:
  Integer num_;   // odd unless exp_ == 0
  unsigned exp_;
};

}  // namespace opcomm
