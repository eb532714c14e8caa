#include "mwp/rational.hpp"

#include <cstdlib>
#include <numeric>
#include <ostream>

#include "mwp/error.hpp"

namespace mwp {

namespace {

using i128 = __int128;

long long narrow(i128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) throw ArithmeticError(std::string("rational overflow in ") + what);
  return static_cast<long long>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0) throw ArithmeticError("zero denominator");
  i128 num = n, den = d;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = narrow(num, "construction");
  den_ = narrow(den, "construction");
}

Rational Rational::parse(const std::string& text) {
  std::string s = text;
  // strip surrounding whitespace
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
  if (s.empty()) throw ParseError("empty number literal");

  bool neg = false;
  size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    neg = s[i] == '-';
    ++i;
  }
  auto digits = [&](size_t& pos) {
    std::string out;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') out.push_back(s[pos++]);
    return out;
  };
  std::string intpart = digits(i);
  if (i < s.size() && s[i] == '/') {
    ++i;
    std::string denpart = digits(i);
    if (intpart.empty() || denpart.empty() || i != s.size())
      throw ParseError("bad fraction literal: " + text);
    long long n = std::strtoll(intpart.c_str(), nullptr, 10);
    long long d = std::strtoll(denpart.c_str(), nullptr, 10);
    Rational r(n, d);
    return neg ? -r : r;
  }
  std::string fracpart;
  if (i < s.size() && s[i] == '.') {
    ++i;
    fracpart = digits(i);
  }
  if (i != s.size() || (intpart.empty() && fracpart.empty()))
    throw ParseError("bad number literal: " + text);
  if (fracpart.size() > 18) throw ParseError("decimal literal too precise: " + text);
  i128 scale = 1;
  for (size_t k = 0; k < fracpart.size(); ++k) scale *= 10;
  i128 whole = intpart.empty() ? 0 : i128(std::strtoll(intpart.c_str(), nullptr, 10));
  i128 frac = fracpart.empty() ? 0 : i128(std::strtoll(fracpart.c_str(), nullptr, 10));
  i128 num = whole * scale + frac;
  i128 g = gcd128(num, scale);
  if (g > 1) {
    num /= g;
    scale /= g;
  }
  Rational r;
  r.num_ = narrow(num, "parse");
  r.den_ = narrow(scale, "parse");
  return neg ? -r : r;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  // terminating decimal iff den = 2^a * 5^b
  long long d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
  int places = twos > fives ? twos : fives;
  i128 scaled = i128(num_ < 0 ? -num_ : num_);
  for (int k = twos; k < places; ++k) scaled *= 2;
  for (int k = fives; k < places; ++k) scaled *= 5;
  std::string digits;
  for (int k = 0; k < places; ++k) {
    digits.push_back(char('0' + int(scaled % 10)));
    scaled /= 10;
  }
  std::string out = std::to_string(static_cast<long long>(scaled));
  out.push_back('.');
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) out.push_back(*it);
  return (num_ < 0 ? "-" : "") + out;
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = narrow(-i128(num_), "negation");
  r.den_ = den_;
  return r;
}

Rational Rational::operator+(const Rational& o) const {
  i128 num = i128(num_) * o.den_ + i128(o.num_) * den_;
  i128 den = i128(den_) * o.den_;
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  Rational r;
  r.num_ = narrow(num, "addition");
  r.den_ = narrow(den, "addition");
  return r;
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  i128 num = i128(num_) * o.num_;
  i128 den = i128(den_) * o.den_;
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  Rational r;
  r.num_ = narrow(num, "multiplication");
  r.den_ = narrow(den, "multiplication");
  return r;
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw ArithmeticError("division by zero");
  i128 num = i128(num_) * o.den_;
  i128 den = i128(den_) * o.num_;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  Rational r;
  r.num_ = narrow(num, "division");
  r.den_ = narrow(den, "division");
  return r;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  i128 lhs = i128(num_) * o.den_;
  i128 rhs = i128(o.num_) * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool Rational::close(const Rational& a, const Rational& b, const Rational& tol) {
  Rational diff = (a - b).abs();
  Rational bound = b.abs() < Rational(1) ? tol : tol * b.abs();
  return diff <= bound;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace mwp
