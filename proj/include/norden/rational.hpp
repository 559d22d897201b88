#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace norden {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number kept in canonical form: gcd(|num|, den) = 1, den > 0,
/// and zero is always 0/1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}

  template <std::integral I>
  Rational(I value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)

  explicit Rational(BigInt num) : num_(std::move(num)), den_(1) {}
  Rational(BigInt num, BigInt den);

  /// Parses `p`, `-p`, `p/q` or `-p/q` with q > 0; non-reduced input is
  /// normalized. Throws std::invalid_argument on anything else, including q = 0.
  static Rational parse(std::string_view text);

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_.sign(); }

  /// `p/q`, or bare `p` when q = 1.
  std::string str() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& r);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  void normalize();

  BigInt num_;
  BigInt den_;
};

Rational abs(const Rational& r);
Rational inverse(const Rational& r);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace norden
