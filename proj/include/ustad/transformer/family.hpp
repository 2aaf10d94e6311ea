#pragma once

#include <vector>

#include "ustad/agg/search.hpp"
#include "ustad/core/element.hpp"
#include "ustad/transformer/qgo.hpp"

namespace ustad {

// Per-row parametric bound machines for one operator applied to one input
// element: row i of the output is min of (row expression composed with the
// update) over the input element intersected with the guard. Every admissible
// parameter choice yields a sound output element; the search only picks among
// them.
struct TransformerFamily {
  std::vector<Psm> rows;
  // The single-variable rows of input + guard contradict: the concrete input
  // set is empty and no machines are built.
  bool box_infeasible = false;
};

TransformerFamily synthesize_family(const Template& tpl, const QgoOperator& op,
                                    const AbstractElement& input);

struct ApplyResult {
  AbstractElement output;           // raw row bounds, -inf where none found
  bool box_infeasible = false;
  std::vector<AggResult> searches;  // one per row, empty if box_infeasible
};

// Synthesizes the family and runs one search per row. jobs > 1 distributes
// rows across threads; results are deterministic either way.
ApplyResult apply_transformer(const Template& tpl, const QgoOperator& op,
                              const AbstractElement& input,
                              const Objective& obj, const AggConfig& cfg,
                              int jobs = 1);

}  // namespace ustad
