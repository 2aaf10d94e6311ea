#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "ustad/support/errors.hpp"
#include "ustad/support/numeric.hpp"

namespace ustad {

// Canonical parameter vector layout:
//   [0, m)                      multipliers of the reduced constraint rows
//   [m, m+s)                    shift coefficients, one per squared variable,
//                               ascending variable index
//   [m+s, m+s+2p)               split coefficients, two per cross pair (i, k)
//                               sorted lexicographically, i-side then k-side
struct ParamLayout {
  int m_lambda = 0;
  std::vector<int> shift_vars;
  std::vector<std::pair<int, int>> pair_vars;

  int lambda_offset() const { return 0; }
  int shift_offset() const { return m_lambda; }
  int pair_offset() const {
    return m_lambda + static_cast<int>(shift_vars.size());
  }
  int size() const {
    return pair_offset() + 2 * static_cast<int>(pair_vars.size());
  }

  int shift_index(int var) const {
    for (size_t i = 0; i < shift_vars.size(); ++i)
      if (shift_vars[i] == var)
        return shift_offset() + static_cast<int>(i);
    throw DimensionError("no shift parameter for variable " +
                         std::to_string(var));
  }
  // side 0 = coefficient on v_i, side 1 = coefficient on v_k.
  int pair_index(int i, int k, int side) const {
    for (size_t p = 0; p < pair_vars.size(); ++p)
      if (pair_vars[p].first == i && pair_vars[p].second == k)
        return pair_offset() + 2 * static_cast<int>(p) + side;
    throw DimensionError("no split parameters for pair (" + std::to_string(i) +
                         ", " + std::to_string(k) + ")");
  }
};

// Admissible parameter region {theta | M theta <= h}. `contradictory` marks a
// region made empty at construction time (a subproblem that diverges for every
// parameter choice); the marker row 0 <= -1 is also present in M, h.
struct ParamSpace {
  Eigen::MatrixXd M;
  Eigen::VectorXd h;
  std::vector<std::string> row_notes;
  bool contradictory = false;

  int rows() const { return static_cast<int>(M.rows()); }
  int dim() const { return static_cast<int>(M.cols()); }

  // Largest constraint violation; <= 0 means membership.
  double violation(const Eigen::VectorXd& theta) const {
    if (rows() == 0) return 0.0;
    return (M * theta - h).maxCoeff();
  }
  bool contains(const Eigen::VectorXd& theta, double eps = kEpsFeas) const {
    return !contradictory && violation(theta) <= eps;
  }
};

}  // namespace ustad
