#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ustad/support/errors.hpp"
#include "ustad/support/numeric.hpp"

namespace ustad {

// Conjunction A v <= b. m = 0 is the trivially-true system.
struct ConstraintSystem {
  Eigen::MatrixXd A;  // m x n
  Eigen::VectorXd b;  // m

  ConstraintSystem() : A(0, 0), b(0) {}
  ConstraintSystem(Eigen::MatrixXd A_, Eigen::VectorXd b_)
      : A(std::move(A_)), b(std::move(b_)) {
    if (A.rows() != b.size())
      throw DimensionError("ConstraintSystem: A and b row counts differ");
  }

  int rows() const { return static_cast<int>(A.rows()); }
  int nvars() const { return static_cast<int>(A.cols()); }

  void append_row(const Eigen::RowVectorXd& a, double rhs);
  void append(const ConstraintSystem& other);
};

// Per-variable interval bounds. lo_i in [-inf, finite], hi_i in [finite, +inf],
// lo_i <= hi_i.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  explicit Box(int n = 0)
      : lo(Eigen::VectorXd::Constant(n, -kInf)),
        hi(Eigen::VectorXd::Constant(n, kInf)) {}

  int nvars() const { return static_cast<int>(lo.size()); }
  bool bounded_below(int i) const { return lo(i) > -kInf; }
  bool bounded_above(int i) const { return hi(i) < kInf; }
};

struct BoxSplit {
  Box box;
  ConstraintSystem reduced;     // rows with >= 2 nonzero coefficients (plus
                                // degenerate all-zero rows, kept verbatim)
  std::vector<int> kept_rows;   // indices of reduced rows in the input system
};

// Peels single-variable rows off into interval bounds.
// Throws InfeasibleError when the collected bounds contradict (lo_i > hi_i).
BoxSplit extract_box(const ConstraintSystem& sys);

}  // namespace ustad
