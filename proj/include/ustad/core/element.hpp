#pragma once

#include <Eigen/Dense>

#include "ustad/core/constraint_system.hpp"
#include "ustad/core/template_matrix.hpp"

namespace ustad {

// Template-domain element {v | T v >= c}. c_i = -inf marks row i absent.
// All rows at -inf is the top element (no information).
struct AbstractElement {
  Eigen::VectorXd c;  // t entries in [-inf, +inf)

  int rows() const { return static_cast<int>(c.size()); }
};

AbstractElement top_element(const Template& tpl);

// True when every row with a finite bound is populated, i.e. not top.
bool has_finite_row(const AbstractElement& e);

// Rewrites finite rows T_i v >= c_i as -T_i v <= -c_i. Rows at -inf drop out.
ConstraintSystem element_to_constraints(const Template& tpl,
                                        const AbstractElement& e);

// Point membership with additive slack: T_i v >= c_i - eps on finite rows.
bool contains_point(const Template& tpl, const AbstractElement& e,
                    const Eigen::VectorXd& v, double eps = kEpsMember);

// Rowwise min of bounds (set union's best template abstraction).
AbstractElement join(const AbstractElement& a, const AbstractElement& b);

struct ElementDelta {
  int improved = 0;   // rows where rhs bound strictly increased
  int worsened = 0;   // rows where rhs bound strictly decreased
  bool dominates = false;     // every row at least as tight, none worse
  bool strengthened = false;  // dominates and at least one row improved
};

// Compares candidate against reference row by row (tolerance on finite pairs).
ElementDelta compare_elements(const AbstractElement& reference,
                              const AbstractElement& candidate,
                              double tol = 1e-9);

}  // namespace ustad
