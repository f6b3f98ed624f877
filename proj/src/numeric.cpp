#include "dynlab/numeric.hpp"

#include "dynlab/error.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>

namespace dynlab {

namespace {

BigInt parse_integer(std::string_view text) {
    std::string_view digits = text;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty()) throw ParseError("numeric", "empty integer in '" + std::string(text) + "'");
    for (char c : digits) {
        if (c < '0' || c > '9') throw ParseError("numeric", "bad integer '" + std::string(text) + "'");
    }
    const BigInt value{std::string(digits)};
    return text.front() == '-' ? BigInt(-value) : value;
}

} // namespace

double to_double(const BigInt& x) {
    if (x == 0) return 0.0;
    if (msb(abs(x)) < 1000) return x.convert_to<double>();
    return (x < 0 ? -1.0 : 1.0) * std::exp(log_abs(x));
}

double to_double(const Rational& x) {
    const BigInt num = numerator(x);
    const BigInt den = denominator(x);
    if (num == 0) return 0.0;
    if (msb(abs(num)) < 1000 && msb(den) < 1000) return num.convert_to<double>() / den.convert_to<double>();
    return (num < 0 ? -1.0 : 1.0) * std::exp(log_abs(num) - log_abs(den));
}

double log_abs(const BigInt& x) {
    BigInt a = abs(x);
    if (a == 0) return -std::numeric_limits<double>::infinity();
    const auto top = msb(a);
    if (top < 1000) return std::log(a.convert_to<double>());
    const auto shift = top - 60;
    a >>= shift;
    return std::log(a.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

Rational parse_rational(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    const BigInt num = parse_integer(text.substr(0, slash));
    const BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw ParseError("numeric", "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

std::string format_double(double x) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.15g", x);
    return buffer;
}

double round15(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(format_double(x).c_str(), nullptr);
}

} // namespace dynlab
