#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace ctx {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational weights. cpp_rational is kept reduced with a positive
// denominator, which is the invariant everything downstream relies on;
// the canonical zero is 0/1.
using Rational = boost::multiprecision::cpp_rational;

// "3/8", "-1/2"; integral values print without a denominator ("0", "1", "-3").
std::string to_string(const Rational& r);

// Accepts exactly the shapes produced by to_string: an optional sign, digits,
// and an optional "/digits" with a positive denominator.
// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

// Best rational approximation of `value` among fractions with denominator
// <= max_denominator (continued-fraction convergents and semiconvergents).
// Used when converting Born-rule tables back to exact arithmetic.
Rational approximate_rational(double value, std::uint64_t max_denominator);

}  // namespace ctx
