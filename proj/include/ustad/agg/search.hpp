#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ustad/psm/psm.hpp"

namespace ustad {

// What the parameter search maximizes.
//   precision: the bound itself.
//   inclusion: hinge distance to a target bound; any bound >= target scores 0.
enum class ObjectiveKind { precision, inclusion };

struct Objective {
  ObjectiveKind kind = ObjectiveKind::precision;
  double target = 0.0;

  double score(double bound) const {
    if (kind == ObjectiveKind::precision) return bound;
    if (bound >= target) return 0.0;
    return -(target - bound);  // -inf bound gives -inf score
  }
  double dscore(double bound) const {
    if (kind == ObjectiveKind::precision) return 1.0;
    return bound < target ? 1.0 : 0.0;
  }
};

enum class StepMode {
  adaptive,  // normalized trial steps, accept on improvement, backtrack else
  fixed      // constant-rate ascent / penalty descent, no acceptance test
};

struct AggConfig {
  double eta = 0.5;    // base step size
  double beta = 10.0;  // penalty step amplification
  int epochs = 50;
  int p = 2;           // hinge penalty exponent, 1 or 2
  StepMode step_mode = StepMode::adaptive;
  double eps_feas = kEpsFeas;
};

struct AggEpoch {
  int epoch = 0;  // 0 is the unstepped start point
  Eigen::VectorXd theta;
  bool feasible = false;
  double bound = -kInf;
  double score = -kInf;
};

struct AggResult {
  Eigen::VectorXd theta_best;
  double bound_best = -kInf;  // raw bound at theta_best; -inf if none found
  double score_best = -kInf;
  bool found_feasible = false;
  int epochs_run = 0;
  std::vector<AggEpoch> trace;
};

// Gradient-guided search over the admissible parameter region, starting at
// theta = 0. Feasible points take ascent steps on the objective score;
// infeasible points take projection-style steps on the hinge penalty.
// epochs = 0 just scores the start point.
AggResult agg_search(const Psm& psm, const Objective& obj,
                     const AggConfig& cfg);

}  // namespace ustad
