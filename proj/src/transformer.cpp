#include "ustad/transformer/family.hpp"

#include <future>

namespace ustad {

TransformerFamily synthesize_family(const Template& tpl, const QgoOperator& op,
                                    const AbstractElement& input) {
  ConstraintSystem stacked = element_to_constraints(tpl, input);
  stacked.append(op.guard);

  TransformerFamily fam;
  try {
    for (int i = 0; i < tpl.rows(); ++i) {
      QuadPoly obj = effective_objective(tpl.T.row(i), op.sigma);
      fam.rows.push_back(build_psm(obj, stacked));
    }
  } catch (const InfeasibleError&) {
    fam.rows.clear();
    fam.box_infeasible = true;
  }
  return fam;
}

ApplyResult apply_transformer(const Template& tpl, const QgoOperator& op,
                              const AbstractElement& input,
                              const Objective& obj, const AggConfig& cfg,
                              int jobs) {
  TransformerFamily fam = synthesize_family(tpl, op, input);
  ApplyResult res;
  if (fam.box_infeasible) {
    res.output = top_element(tpl);
    res.box_infeasible = true;
    return res;
  }

  const int t = static_cast<int>(fam.rows.size());
  res.searches.resize(t);
  if (jobs > 1 && t > 1) {
    std::vector<std::future<AggResult>> futs;
    futs.reserve(t);
    for (int i = 0; i < t; ++i)
      futs.push_back(std::async(std::launch::async, [&, i] {
        return agg_search(fam.rows[i], obj, cfg);
      }));
    for (int i = 0; i < t; ++i) res.searches[i] = futs[i].get();
  } else {
    for (int i = 0; i < t; ++i) res.searches[i] = agg_search(fam.rows[i], obj, cfg);
  }

  res.output.c = Eigen::VectorXd::Constant(t, -kInf);
  for (int i = 0; i < t; ++i)
    if (res.searches[i].found_feasible)
      res.output.c(i) = res.searches[i].bound_best;
  return res;
}

}  // namespace ustad
