#pragma once

#include <gmpxx.h>

#include <string>

namespace wronsos {

using Rational = mpq_class;
using Integer = mpz_class;

// "3", "-2/5"; always canonical (reduced, positive denominator).
std::string to_string(const Rational& q);

Rational parse_rational(const std::string& text);

inline double to_double(const Rational& q) { return q.get_d(); }

// Best rational approximation of x with denominator at most max_den,
// computed from the continued-fraction expansion of the exact binary value.
Rational approximate(double x, const Integer& max_den);

}  // namespace wronsos
