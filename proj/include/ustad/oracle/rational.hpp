#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>

#include "ustad/support/errors.hpp"

namespace ustad {

// Exact arithmetic for the reference oracle. Kept apart from the double
// pipeline on purpose: results cross over only at explicit conversions.
using Rational = boost::multiprecision::cpp_rational;

// Exact: every finite double is a dyadic rational.
inline Rational to_rational(double d) {
  if (!std::isfinite(d)) throw Error("to_rational: non-finite value");
  return Rational(d);
}

inline double to_double(const Rational& r) {
  return r.convert_to<double>();
}

inline double round_up_ulp(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}

}  // namespace ustad
