#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace probterm {

// Exact arbitrary-precision arithmetic; all probabilities and polynomial
// coefficients in the proof path use this type, never floating point.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(long num, long den = 1) { return Rat(num, den); }

// "num/den" with the "/den" part omitted for integers.
inline std::string rat_to_string(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/" + denominator(r).str();
  }
  return s;
}

inline bool rat_is_integer(const Rat& r) { return denominator(r) == 1; }

}  // namespace probterm
