#include "norden/linalg.hpp"

namespace norden {

Vector primitive(const Vector& v) {
  BigInt lcm = 1;
  for (Index i = 0; i < v.size(); ++i) lcm = boost::multiprecision::lcm(lcm, v(i).denominator());
  BigInt gcd = 0;
  for (Index i = 0; i < v.size(); ++i) {
    gcd = boost::multiprecision::gcd(gcd, BigInt(v(i).numerator() * (lcm / v(i).denominator())));
  }
  if (gcd.is_zero()) return v;

  int lead_sign = 0;
  for (Index i = 0; i < v.size() && lead_sign == 0; ++i) lead_sign = v(i).sign();

  Vector out(v.size());
  const Rational scale(lead_sign < 0 ? BigInt(-lcm) : lcm, gcd);
  for (Index i = 0; i < v.size(); ++i) out(i) = v(i) * scale;
  return out;
}

}  // namespace norden
