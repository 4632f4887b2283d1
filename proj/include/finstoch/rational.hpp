#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace finstoch {

// All probabilities are exact rationals; entropy is the only floating-point
// surface of the library. boost keeps values in lowest terms with a positive
// denominator, so equality and zero tests are bit-exact.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long num, long long den = 1) { return Rational(num, den); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline bool is_probability(const Rational& r) { return r >= 0 && r <= 1; }

/// Renders "a" when the denominator is 1, otherwise "a/b".
std::string to_string(const Rational& r);

/// Parses "a" or "a/b" (optionally signed). Throws Error on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace finstoch
