#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <tuple>

namespace gr2 {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Floor division; `b` must be nonzero.
Int floor_div(const Int& a, const Int& b);

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
std::tuple<Int, Int, Int> xgcd(const Int& a, const Int& b);

/// Least non-negative residue of `a` modulo `m` (m > 0).
Int mod_floor(const Int& a, const Int& m);

inline bool is_odd(const Int& a) { return bit_test(abs(a), 0); }

std::string to_string(const Int& a);
std::string to_string(const Rational& a);

}  // namespace gr2
