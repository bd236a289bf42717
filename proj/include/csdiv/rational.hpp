#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "csdiv/errors.hpp"

namespace csdiv {

// Arbitrary-precision exact rationals.  Backed by boost::multiprecision;
// everything built on top of them in this project (polynomials, certificates,
// coefficient tables) is exact with no rounding anywhere.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return static_cast<double>(r); }

/// "num/den" when den != 1, plain integer otherwise.
std::string to_fraction_string(const Rational& r);

/// Accepts "3", "-7/2" and decimal literals like "-0.25" (decimals are exact
/// rationals: -25/100).  Returns nullopt on malformed input.
std::optional<Rational> parse_rational(const std::string& text);

}  // namespace csdiv
