#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace cc {

// Arbitrary-precision integers and rationals back every comparison that must
// be exact: ratio orderings are decided by cross-multiplication inside
// cpp_rational, never through floating point.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(std::int64_t num, std::int64_t den = 1) {
  return Rat(BigInt(num), BigInt(den));
}

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

// Parses a non-negative decimal literal ("0.1", "2", ".25") into an exact
// rational, so CLI parameters like gamma keep their intended value instead of
// inheriting a binary-float approximation.
Rat parse_decimal_rat(const std::string& text);

std::string rat_to_string(const Rat& r);

}  // namespace cc
