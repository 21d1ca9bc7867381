#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace arboreal {

// Every coefficient in the library is an exact, reduced rational.
using Rational = boost::multiprecision::mpq_rational;

inline std::string to_string(const Rational& q) { return q.str(); }

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

inline bool is_integer(const Rational& q) {
    return boost::multiprecision::denominator(q) == 1;
}

}  // namespace arboreal
