#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace dynlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

double to_double(const BigInt& x);
double to_double(const Rational& x);

// Natural log of |x| for x != 0, valid far beyond the double exponent range.
double log_abs(const BigInt& x);

// Accepts "a", "-a" or "a/b" (b != 0); result is normalized.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);

// 15 significant digits; every serialized float goes through this.
std::string format_double(double x);
double round15(double x);

} // namespace dynlab
