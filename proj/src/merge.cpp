#include "ustad/eum/merge.hpp"

namespace ustad {

MergePolicy merge_policy_from_name(const std::string& name) {
  if (name == "all") return MergePolicy::all;
  if (name == "quad_only") return MergePolicy::quad_only;
  if (name == "capped") return MergePolicy::capped;
  throw Error("unknown merge policy: " + name);
}

std::string merge_policy_name(MergePolicy policy) {
  switch (policy) {
    case MergePolicy::all: return "all";
    case MergePolicy::quad_only: return "quad_only";
    case MergePolicy::capped: return "capped";
  }
  return "?";
}

std::vector<MergeGroup> merge_assignments(const std::vector<AssignStep>& seq,
                                          int nvars, const MergeConfig& cfg,
                                          const VarTable* names) {
  std::vector<MergeGroup> groups;
  size_t i = 0;
  while (i < seq.size()) {
    MergeGroup g;
    g.first = static_cast<int>(i);
    g.steps.push_back(seq[i]);
    g.sigma = compute_eum(g.steps, nvars, names);
    ++i;
    while (i < seq.size()) {
      if (cfg.policy == MergePolicy::capped &&
          static_cast<int>(g.steps.size()) >= cfg.cap)
        break;
      std::vector<AssignStep> candidate = g.steps;
      candidate.push_back(seq[i]);
      EffectiveUpdateMap sigma;
      try {
        sigma = compute_eum(candidate, nvars, names);
      } catch (const DegreeError&) {
        break;  // fusing this step overflows the degree cap: flush
      }
      g.steps = std::move(candidate);
      g.sigma = std::move(sigma);
      ++i;
    }
    groups.push_back(std::move(g));
  }

  if (cfg.policy == MergePolicy::quad_only) {
    std::vector<MergeGroup> out;
    for (auto& g : groups) {
      bool has_quad = false;
      for (const auto& s : g.steps)
        if (s.rhs.degree() == 2) has_quad = true;
      if (has_quad || g.steps.size() == 1) {
        out.push_back(std::move(g));
      } else {
        for (size_t k = 0; k < g.steps.size(); ++k) {
          MergeGroup sg;
          sg.first = g.first + static_cast<int>(k);
          sg.steps = {g.steps[k]};
          sg.sigma = compute_eum(sg.steps, nvars, names);
          out.push_back(std::move(sg));
        }
      }
    }
    return out;
  }
  return groups;
}

}  // namespace ustad
