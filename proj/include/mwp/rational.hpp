#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace mwp {

// Exact rational arithmetic over 64-bit numerator/denominator.
// Always normalized: gcd(num, den) == 1 and den > 0. Intermediate
// products go through 128-bit integers; results that do not fit back
// into 64 bits raise ArithmeticError.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(long long n, long long d);

  // Accepts integers ("22", "-3"), decimals ("2.5", ".75"), and
  // fractions ("5/2"). Throws ParseError on anything else.
  static Rational parse(const std::string& text);

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // Shortest exact form: integer, terminating decimal when the
  // denominator is 2^a*5^b, otherwise "num/den".
  std::string str() const;

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  std::strong_ordering operator<=>(const Rational& o) const;

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  // |a - b| <= tol * max(1, |b|), computed exactly.
  static bool close(const Rational& a, const Rational& b, const Rational& tol);

 private:
  long long num_;
  long long den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace mwp
