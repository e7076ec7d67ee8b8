// Exact rational arithmetic used throughout the library. All instance data is
// stored as rationals; double mirrors are derived views for the float solver
// path. Conversions from double are exact (every finite double is dyadic).
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace pottscert {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

// Accepts integers ("42", "-7"), decimals with optional exponent ("0.1",
// "1e6", "-2.5e-3"), and exact fractions ("1/3"). Decimal tokens are parsed
// exactly, so read/write round-trips preserve values. Throws
// std::invalid_argument on malformed input.
Rat parse_rational(const std::string& token);

// Canonical text form: integers print bare, terminating decimals of at most
// 17 significant digits print as decimals ("0.1", "1.25e-9" is never used),
// everything else prints as "p/q". parse_rational(format_rational(r)) == r.
std::string format_rational(const Rat& r);

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline Rat rat_from_double(double d) { return Rat(d); }

}  // namespace pottscert
