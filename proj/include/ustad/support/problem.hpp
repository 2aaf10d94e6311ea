#pragma once

#include <string>

#include "ustad/core/constraint_system.hpp"
#include "ustad/poly/quad_poly.hpp"

namespace ustad {

// Optimization problem text format:
//   vars: x y z
//   minimize: x^2 - 3*x*y + 2
//   subject to:
//   x + y <= 4
//   x - y >= -2
// Constraints are linear (<=, >=, <, >, ==; strict forms mean their closures),
// one per line. `//` and `#` start comments.
struct Problem {
  VarTable vars;
  QuadPoly objective;
  ConstraintSystem sys;
};

Problem parse_problem(const std::string& source);

}  // namespace ustad
