#pragma once

#include <gmpxx.h>

#include <string>

namespace qforge {

using Rational = mpq_class;
using Integer = mpz_class;

// Always "p/q" with q >= 1, e.g. "3/1", "-1/2".
std::string to_string(const Rational& r);

// Accepts "p/q" or a bare integer "p". Throws InputError otherwise.
Rational parse_rational(const std::string& text);

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace qforge
