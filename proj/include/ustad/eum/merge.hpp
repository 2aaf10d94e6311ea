#pragma once

#include <string>
#include <vector>

#include "ustad/eum/update_map.hpp"

namespace ustad {

// How aggressively consecutive assignments fuse into one update map.
//   all:       longest prefixes that stay within degree 2
//   quad_only: like all, but groups of purely linear assignments fall back to
//              singletons; only runs touching a quadratic right-hand side fuse
//   capped:    like all, with at most `cap` assignments per group (cap 1
//              disables fusion)
enum class MergePolicy { all, quad_only, capped };

struct MergeConfig {
  MergePolicy policy = MergePolicy::all;
  int cap = 1;
};

MergePolicy merge_policy_from_name(const std::string& name);
std::string merge_policy_name(MergePolicy policy);

struct MergeGroup {
  std::vector<AssignStep> steps;
  EffectiveUpdateMap sigma;
  int first = 0;  // 0-based index of the group's first assignment in the input
};

// Greedy left-to-right grouping: each group extends while the refolded update
// map stays within degree 2 and the policy admits the longer group.
std::vector<MergeGroup> merge_assignments(const std::vector<AssignStep>& seq,
                                          int nvars, const MergeConfig& cfg,
                                          const VarTable* names = nullptr);

}  // namespace ustad
