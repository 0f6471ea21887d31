#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace rtlab {

// Compare against Fraction(k), not a bare int: with C++20 operator rewriting,
// Boost 1.74 rational == int recurses without end.
using Fraction = boost::rational<std::int64_t>;

/// Parses "p/q", an integer, or a decimal such as "0.3" into a fraction.
Fraction parse_fraction(const std::string& text);
/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Fraction& f);

}  // namespace rtlab
