#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace s1fc {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Accepts "p", "-p", "p/q" with optional surrounding blanks.
Rational parse_rational(std::string_view s);
std::string to_string(const Rational& q);

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

Rational pow(const Rational& q, int e);

}  // namespace s1fc
