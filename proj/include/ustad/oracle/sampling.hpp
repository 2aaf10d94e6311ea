#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "ustad/core/constraint_system.hpp"
#include "ustad/poly/quad_poly.hpp"

namespace ustad {

struct SampleConfig {
  uint64_t seed = 1;
  int samples = 10000;
  int burnin = 100;
  double clamp = 1e6;  // walk stays inside this coordinate box
};

struct SampleResult {
  double min_value = kInf;
  Eigen::VectorXd argmin;
  int evaluated = 0;
  bool clamped = false;  // the clamp box truncated at least one chord
};

// A point of {v | A v <= b} with maximum margin (capped at 1), found exactly.
// *margin gets the achieved cap; 0 means the region has empty interior.
// Throws InfeasibleError when the region is empty.
Eigen::VectorXd interior_point(const ConstraintSystem& sys, double* margin);

// Minimum of f over {v | A v <= b} estimated from above: a chord-walk over
// the region plus every feasible corner of its bounding box. The result is an
// attained value of f at a verified feasible point, so it upper-bounds the
// true minimum. Throws InfeasibleError when the region is empty.
SampleResult sample_min(const QuadPoly& f, const ConstraintSystem& sys,
                        const SampleConfig& cfg);

}  // namespace ustad
