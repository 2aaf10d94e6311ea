#pragma once

#include <vector>

#include "ustad/oracle/rational.hpp"

namespace ustad {

enum class LpStatus { optimal, unbounded, infeasible };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational value;               // meaningful for optimal
  std::vector<Rational> point;  // an optimizer, n entries, for optimal
};

// Exact minimum of c . v subject to A v <= b over free v, by dense two-phase
// tableau pivoting with the smallest-index anti-cycling rule. Row count and
// c/A width must agree.
LpResult lp_minimize(const std::vector<std::vector<Rational>>& A,
                     const std::vector<Rational>& b,
                     const std::vector<Rational>& c);

}  // namespace ustad
