#pragma once

#include <map>
#include <vector>

#include "ustad/poly/quad_poly.hpp"

namespace ustad {

// One `v := rhs` step. `var` indexes the shared variable table.
struct AssignStep {
  int var = -1;
  QuadPoly rhs;
};

// Effective update map of a straight-line block: each written variable maps to
// a polynomial over the state at block entry. Unwritten variables are
// implicitly the identity.
struct EffectiveUpdateMap {
  int nvars = 0;
  std::map<int, QuadPoly> exprs;

  // nullptr for identity variables.
  const QuadPoly* find(int var) const {
    auto it = exprs.find(var);
    return it == exprs.end() ? nullptr : &it->second;
  }
};

// Rewrites p over the block-entry state by substituting sigma into every
// variable occurrence. The whole expansion is collected before the degree cap
// is checked, so cancelling products of quadratics are accepted.
QuadPoly substitute(const QuadPoly& p, const EffectiveUpdateMap& sigma,
                    const VarTable* names = nullptr);

// Left-to-right fold of an assignment sequence. Each right-hand side is
// rewritten over the entry state via the map built so far, then recorded.
// A degree overflow rethrows DegreeError carrying the 1-based step index.
EffectiveUpdateMap compute_eum(const std::vector<AssignStep>& seq, int nvars,
                               const VarTable* names = nullptr);

// Objective for one template row: row_expr composed with the block's map.
QuadPoly effective_objective(const Eigen::RowVectorXd& row,
                             const EffectiveUpdateMap& sigma,
                             const VarTable* names = nullptr);

}  // namespace ustad
