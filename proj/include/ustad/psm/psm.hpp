#pragma once

#include <Eigen/Dense>

#include "ustad/core/constraint_system.hpp"
#include "ustad/poly/quad_poly.hpp"
#include "ustad/psm/param_space.hpp"

namespace ustad {

// Function of the parameter vector, w . theta + c0.
struct AffineForm {
  Eigen::VectorXd w;
  double c0 = 0.0;

  double eval(const Eigen::VectorXd& theta) const {
    return w.dot(theta) + c0;
  }
};

// One residual linear term k(theta) * v over an interval.
struct LinearSub {
  int var = -1;
  AffineForm k;
  double lo = -kInf;
  double hi = kInf;
};

// One square term a * v^2 + theta[b_param] * v over an interval, a != 0.
struct QuadSub {
  int var = -1;
  double a = 0.0;
  int b_param = -1;
  double lo = -kInf;
  double hi = kInf;
};

// One cross term a * vi * vk + theta[b_param] * vi + theta[c_param] * vk.
struct BilinSub {
  int vi = -1, vk = -1;
  double a = 0.0;
  int b_param = -1;  // coefficient on vi
  int c_param = -1;  // coefficient on vk
  double li = -kInf, ui = kInf;  // interval of vi
  double lk = -kInf, uk = kInf;  // interval of vk
};

// Parametric sound lower-bound machine for min f(v) subject to A v <= b:
// single-variable rows become interval bounds, remaining rows enter a
// multiplier term, and the quadratic part is split into independent
// one- and two-variable subproblems whose exact interval minima sum to a
// bound valid for every admissible parameter vector.
struct Psm {
  ParamLayout layout;
  ParamSpace theta;

  AffineForm constant_part;
  std::vector<LinearSub> linears;
  std::vector<QuadSub> quads;
  std::vector<BilinSub> bilins;

  Box box;
  ConstraintSystem reduced;
  QuadPoly objective;
  ConstraintSystem original;

  int dim() const { return layout.size(); }
  Eigen::VectorXd zero_theta() const {
    return Eigen::VectorXd::Zero(layout.size());
  }
};

// Throws InfeasibleError when the single-variable rows already contradict.
Psm build_psm(const QuadPoly& objective, const ConstraintSystem& sys);

// Exact infimum of the decomposed relaxation at theta, in [-inf, +inf].
// No admissibility gate; -inf signals a divergent subproblem at this theta.
double eval_bound_raw(const Psm& psm, const Eigen::VectorXd& theta);

// Gated bound: -inf when theta is outside the admissible region (tolerance
// eps) or the region is empty, else eval_bound_raw.
double eval_bound(const Psm& psm, const Eigen::VectorXd& theta,
                  double eps = kEpsFeas);

// Gradient of the bound at theta, using the active branch of every
// subproblem; ties resolve toward the lower endpoint.
Eigen::VectorXd grad_bound(const Psm& psm, const Eigen::VectorXd& theta);

// Gradient of the hinge penalty (1/p) * sum max(0, M theta - h)^p, p in {1,2}.
Eigen::VectorXd penalty_gradient(const Psm& psm, const Eigen::VectorXd& theta,
                                 int p = 2);

}  // namespace ustad
