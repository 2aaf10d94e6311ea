#include "ustad/agg/search.hpp"

#include <cmath>

namespace ustad {
namespace {

// Multipliers live in the nonnegative orthant; projecting them back is always
// admissible and keeps penalty walks off that trivial face.
void clamp_multipliers(const Psm& psm, Eigen::VectorXd& theta) {
  for (int r = 0; r < psm.layout.m_lambda; ++r)
    theta(r) = std::max(0.0, theta(r));
}

struct Eval {
  bool feasible = false;
  double bound = -kInf;
  double score = -kInf;
};

Eval evaluate(const Psm& psm, const Objective& obj, const AggConfig& cfg,
              const Eigen::VectorXd& theta) {
  Eval e;
  e.feasible = psm.theta.contains(theta, cfg.eps_feas);
  e.bound = e.feasible ? eval_bound_raw(psm, theta) : -kInf;
  e.score = obj.score(e.bound);
  return e;
}

}  // namespace

AggResult agg_search(const Psm& psm, const Objective& obj,
                     const AggConfig& cfg) {
  AggResult res;
  Eigen::VectorXd theta = psm.zero_theta();

  bool has_best = false;
  auto consider_best = [&](const Eigen::VectorXd& th, const Eval& e) {
    if (!e.feasible || e.bound == -kInf) return;
    if (!has_best || e.score > res.score_best) {
      has_best = true;
      res.found_feasible = true;
      res.theta_best = th;
      res.score_best = e.score;
      res.bound_best = e.bound;
    }
  };
  auto record = [&](int epoch, const Eigen::VectorXd& th, const Eval& e) {
    res.trace.push_back({epoch, th, e.feasible, e.bound, e.score});
  };

  Eval cur = evaluate(psm, obj, cfg, theta);
  record(0, theta, cur);
  consider_best(theta, cur);
  res.theta_best = has_best ? res.theta_best : theta;

  double s = cfg.eta;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    if (psm.theta.contradictory) break;

    if (cur.feasible && cur.bound > -kInf) {
      const Eigen::VectorXd g = obj.dscore(cur.bound) * grad_bound(psm, theta);
      const double gmax = g.size() > 0 ? g.cwiseAbs().maxCoeff() : 0.0;
      if (cfg.step_mode == StepMode::fixed) {
        theta += cfg.eta * g;
      } else if (gmax == 0.0) {
        s *= 0.5;  // plateau: stay, probe closer next time
      } else {
        Eigen::VectorXd trial = theta + (s / gmax) * g;
        clamp_multipliers(psm, trial);
        const Eval te = evaluate(psm, obj, cfg, trial);
        if (te.feasible && te.score > (has_best ? res.score_best : -kInf)) {
          theta = trial;
        } else {
          if (has_best) theta = res.theta_best;
          else theta = trial;
          s *= 0.5;
        }
      }
    } else if (cur.feasible) {
      // Inside the region but on a divergent branch of the bound.
      if (has_best) theta = res.theta_best;
      s *= 0.5;
    } else {
      Eigen::VectorXd r = psm.theta.M * theta - psm.theta.h;
      r = r.cwiseMax(0.0);
      const Eigen::VectorXd g = penalty_gradient(psm, theta, cfg.p);
      if (g.norm() == 0.0) break;  // violated rows with no usable direction
      if (cfg.step_mode == StepMode::fixed) {
        theta -= (cfg.eta * cfg.beta / g.cwiseAbs().maxCoeff()) * g;
      } else {
        // Zero the descent coordinates the multiplier clamp would undo, so
        // the step budget lands on the violated rows instead of the orthant
        // wall. With one violated row the step reaches it exactly.
        Eigen::VectorXd d = g;
        for (int i = 0; i < psm.layout.m_lambda; ++i)
          if (theta(i) <= 0.0 && d(i) > 0.0) d(i) = 0.0;
        const double dn = d.norm();
        if (dn == 0.0) break;  // every direction is clamped away
        double num = 0.0, den = 0.0;
        for (int i = 0; i < psm.theta.rows(); ++i) {
          if (r(i) <= 0.0) continue;
          const double ui = psm.theta.M.row(i).dot(d);
          num += r(i) * ui;
          den += ui * ui;
        }
        const double land = den > 0.0 && num > 0.0 ? num / den : kInf;
        const double tau = std::min(land, cfg.eta * cfg.beta / dn);
        theta -= tau * d;
        clamp_multipliers(psm, theta);
      }
    }

    cur = evaluate(psm, obj, cfg, theta);
    record(epoch, theta, cur);
    consider_best(theta, cur);
    res.epochs_run = epoch;
  }

  if (!has_best) res.theta_best = theta;
  return res;
}

}  // namespace ustad
