#pragma once

#include "ustad/core/constraint_system.hpp"
#include "ustad/eum/update_map.hpp"

namespace ustad {

// Guarded update: states satisfying every guard row (P v <= q) step to
// sigma(v); degree of every update polynomial is at most 2. An empty guard is
// the unguarded update, an empty sigma the pure filter.
struct QgoOperator {
  EffectiveUpdateMap sigma;
  ConstraintSystem guard;
};

}  // namespace ustad
