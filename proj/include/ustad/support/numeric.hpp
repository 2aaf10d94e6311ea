#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace ustad {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Absolute tolerance for state membership checks.
inline constexpr double kEpsMember = 1e-9;
// Tolerance for parameter-space membership.
inline constexpr double kEpsFeas = 1e-9;
// Coefficients below this are dropped when polynomials are collected.
inline constexpr double kEpsCoeff = 1e-12;
// Slack granted to sampling-based soundness comparisons.
inline constexpr double kEpsAudit = 1e-7;

// Bounds claimed as sound to the outside are relaxed downward by this margin;
// internal propagation keeps raw values.
inline double reported_bound(double raw) {
  if (!std::isfinite(raw)) return raw;
  return raw - 1e-9 * std::max(1.0, std::abs(raw));
}

inline bool nearly_equal(double a, double b, double tol = 1e-9) {
  if (a == b) return true;  // covers matching infinities
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace ustad
