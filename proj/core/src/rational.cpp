#include "ctx/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace ctx {

std::string to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += '/';
    s += denominator(r).str();
  }
  return s;
}

Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  };
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  auto digits = [&](BigInt& out) {
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      fail();
    out = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      out *= 10;
      out += text[pos] - '0';
      ++pos;
    }
  };
  BigInt num;
  digits(num);
  BigInt den = 1;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    digits(den);
    if (den == 0) fail();
  }
  if (pos != text.size()) fail();
  if (negative) num = -num;
  return Rational(num, den);
}

Rational approximate_rational(double value, std::uint64_t max_denominator) {
  if (max_denominator == 0)
    throw std::invalid_argument("max_denominator must be positive");
  if (!std::isfinite(value))
    throw std::invalid_argument("cannot approximate a non-finite value");
  bool negative = value < 0;
  double v = negative ? -value : value;

  // exact fraction of the double
  int exp = 0;
  double mant = std::frexp(v, &exp);
  BigInt num = 0;
  for (int i = 0; i < 64 && mant != 0.0; ++i) {
    mant *= 2;
    int bit = static_cast<int>(mant);
    mant -= bit;
    num = num * 2 + bit;
    --exp;
  }
  BigInt den = 1;
  if (exp >= 0)
    num <<= exp;
  else
    den <<= -exp;
  Rational exact(num, den);
  BigInt bound = max_denominator;

  if (denominator(exact) <= bound)
    return negative ? -exact : exact;

  // continued-fraction convergents p/q with the closing semiconvergent
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  BigInt n = numerator(exact), d = denominator(exact);
  while (true) {
    BigInt a = n / d;
    BigInt p2 = a * p1 + p0;
    BigInt q2 = a * q1 + q0;
    if (q2 > bound) {
      BigInt k = (bound - q0) / q1;
      Rational semi(k * p1 + p0, k * q1 + q0);
      Rational conv(p1, q1);
      Rational best =
          abs(semi - exact) < abs(conv - exact) ? semi : conv;
      return negative ? -best : best;
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    BigInt r = n - a * d;
    if (r == 0) return negative ? -Rational(p1, q1) : Rational(p1, q1);
    n = d;
    d = r;
  }
}

}  // namespace ctx
