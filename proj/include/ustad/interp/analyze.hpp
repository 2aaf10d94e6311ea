#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ustad/agg/search.hpp"
#include "ustad/eum/merge.hpp"
#include "ustad/interp/program.hpp"
#include "ustad/transformer/family.hpp"

namespace ustad {

struct RunConfig {
  TemplateKind domain = TemplateKind::interval;
  MergeConfig merge;
  AggConfig agg;
  Objective objective;
  int widening_delay = 2;  // joins at a loop head before bounds start dropping
  bool narrowing = false;  // bounded post-stabilization recovery rounds
  int jobs = 1;
  int max_transfers = 100000;  // safety valve
};

struct AssertReport {
  int block = -1;
  int line = 0;
  std::string text;
  bool reachable = false;
  bool proved = false;  // vacuously true when unreachable
};

struct AnalysisResult {
  Template tpl;
  // Entry invariant per block; nullopt marks a block never reached.
  std::vector<std::optional<AbstractElement>> entry;
  std::vector<AssertReport> asserts;
  int transfers = 0;
  bool stabilized = false;
};

AnalysisResult analyze(const Program& prog, const RunConfig& cfg);

// Row-level movement from run `a` to run `b` over matching block entries.
struct InvariantDelta {
  int rows_improved = 0;
  int rows_worsened = 0;
  int blocks_compared = 0;
  bool non_worse = true;
};

InvariantDelta compare_invariants(const AnalysisResult& a,
                                  const AnalysisResult& b, double tol = 1e-9);

}  // namespace ustad
