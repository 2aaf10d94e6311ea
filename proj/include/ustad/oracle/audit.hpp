#pragma once

#include <string>
#include <vector>

#include "ustad/oracle/sampling.hpp"
#include "ustad/psm/psm.hpp"

namespace ustad {

struct AuditConfig {
  uint64_t seed = 1;
  int theta_samples = 50;
  SampleConfig sampling;
};

struct AuditFinding {
  Eigen::VectorXd theta;
  double reported = 0.0;
  double reference = 0.0;
  std::string kind;
};

struct AuditResult {
  int checked = 0;      // admissible parameter vectors exercised
  int violations = 0;
  bool region_empty = false;     // no admissible parameter vector found
  bool value_set_empty = false;  // constraint region empty: any bound is valid
  bool used_exact_lp = false;
  double sample_reference = kInf;
  std::vector<AuditFinding> findings;
  std::vector<std::string> notes;
};

// Independent check that the machine only ever reports sound bounds: draws
// parameter vectors that satisfy the admissible region exactly (no tolerance),
// evaluates the reported bound at each, and compares against an attained value
// of the objective (and, for linear objectives, the exact simplex minimum).
AuditResult soundness_audit(const Psm& psm, const AuditConfig& cfg);

}  // namespace ustad
