#include "ustad/interp/analyze.hpp"

#include <algorithm>
#include <set>

namespace ustad {
namespace {

// Assignment runs fuse into update-map groups; other instructions pass
// through and cut the runs.
struct BlockStep {
  enum class Kind { update, assume, assert_check, havoc } kind;
  EffectiveUpdateMap sigma;   // update
  const InstrAssume* assume = nullptr;
  const InstrAssert* chk = nullptr;
  int havoc_var = -1;
};

std::vector<BlockStep> plan_block(const BasicBlock& blk, int nvars,
                                  const MergeConfig& merge,
                                  const VarTable* names) {
  std::vector<BlockStep> steps;
  std::vector<AssignStep> run;
  auto flush = [&] {
    if (run.empty()) return;
    for (auto& g : merge_assignments(run, nvars, merge, names)) {
      BlockStep s;
      s.kind = BlockStep::Kind::update;
      s.sigma = std::move(g.sigma);
      steps.push_back(std::move(s));
    }
    run.clear();
  };
  for (const auto& ins : blk.instrs) {
    if (const auto* a = std::get_if<InstrAssign>(&ins)) {
      run.push_back({a->var, a->rhs});
    } else if (const auto* s = std::get_if<InstrAssume>(&ins)) {
      flush();
      BlockStep b;
      b.kind = BlockStep::Kind::assume;
      b.assume = s;
      steps.push_back(std::move(b));
    } else if (const auto* c = std::get_if<InstrAssert>(&ins)) {
      flush();
      BlockStep b;
      b.kind = BlockStep::Kind::assert_check;
      b.chk = c;
      steps.push_back(std::move(b));
    } else if (const auto* h = std::get_if<InstrHavoc>(&ins)) {
      flush();
      BlockStep b;
      b.kind = BlockStep::Kind::havoc;
      b.havoc_var = h->var;
      steps.push_back(std::move(b));
    }
  }
  flush();
  return steps;
}

struct Analyzer {
  const Program& prog;
  const RunConfig& cfg;
  Template tpl;
  std::vector<std::vector<BlockStep>> plans;
  std::vector<int> rpo_index;
  std::vector<int> rpo_order;
  std::vector<bool> is_loop_head;

  Analyzer(const Program& p, const RunConfig& c)
      : prog(p), cfg(c), tpl(make_template(c.domain, p.nvars())) {
    for (const auto& blk : prog.blocks)
      plans.push_back(plan_block(blk, p.nvars(), cfg.merge, &prog.vars));
    order_blocks();
  }

  std::vector<int> successors(int b) const {
    const BasicBlock& blk = prog.blocks[b];
    switch (blk.term) {
      case BasicBlock::Term::jump: return {blk.next};
      case BasicBlock::Term::branch: return {blk.next, blk.false_next};
      case BasicBlock::Term::exit: return {};
    }
    return {};
  }

  void order_blocks() {
    const int n = prog.nblocks();
    std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
    std::vector<int> post;
    // Iterative DFS keeping discovery order of successors.
    std::vector<std::pair<int, int>> stack{{prog.entry, 0}};
    state[prog.entry] = 1;
    while (!stack.empty()) {
      auto& [b, i] = stack.back();
      const auto succ = successors(b);
      if (i < static_cast<int>(succ.size())) {
        const int s = succ[i++];
        if (state[s] == 0) {
          state[s] = 1;
          stack.push_back({s, 0});
        }
      } else {
        state[b] = 2;
        post.push_back(b);
        stack.pop_back();
      }
    }
    rpo_index.assign(n, -1);
    for (int i = static_cast<int>(post.size()) - 1; i >= 0; --i) {
      rpo_index[post[i]] = static_cast<int>(post.size()) - 1 - i;
      rpo_order.push_back(post[i]);  // ascending reverse-postorder index
    }

    is_loop_head.assign(n, false);
    for (int b = 0; b < n; ++b) {
      if (rpo_index[b] < 0) continue;
      for (int s : successors(b))
        if (rpo_index[s] >= 0 && rpo_index[s] <= rpo_index[b])
          is_loop_head[s] = true;
    }
  }

  std::optional<AbstractElement> filter(const AbstractElement& e,
                                        const ConstraintSystem& rows) const {
    if (rows.rows() == 0) return e;
    QgoOperator op;
    op.sigma.nvars = prog.nvars();
    op.guard = rows;
    ApplyResult r =
        apply_transformer(tpl, op, e, cfg.objective, cfg.agg, cfg.jobs);
    if (r.box_infeasible) return std::nullopt;
    return r.output;
  }

  std::optional<AbstractElement> run_steps(
      int b, AbstractElement state, std::vector<AssertReport>* reports) const {
    for (const auto& step : plans[b]) {
      switch (step.kind) {
        case BlockStep::Kind::update: {
          QgoOperator op;
          op.sigma = step.sigma;
          ApplyResult r =
              apply_transformer(tpl, op, state, cfg.objective, cfg.agg,
                                cfg.jobs);
          if (r.box_infeasible) return std::nullopt;
          state = std::move(r.output);
          break;
        }
        case BlockStep::Kind::assume: {
          auto next = filter(state, step.assume->cond.when_true);
          if (!next) return std::nullopt;
          state = std::move(*next);
          break;
        }
        case BlockStep::Kind::assert_check: {
          if (reports) {
            AssertReport rep;
            rep.block = b;
            rep.line = step.chk->line;
            rep.text = step.chk->cond.text;
            rep.reachable = true;
            rep.proved = check_assert(state, step.chk->cond);
            reports->push_back(std::move(rep));
          }
          break;
        }
        case BlockStep::Kind::havoc: {
          for (int i = 0; i < tpl.rows(); ++i)
            if (tpl.T(i, step.havoc_var) != 0.0) state.c(i) = -kInf;
          break;
        }
      }
    }
    return state;
  }

  // Every row P v <= q of the condition must hold on the element: the minimum
  // of q - P v over it has to come out nonnegative.
  bool check_assert(const AbstractElement& state,
                    const LinearCond& cond) const {
    const ConstraintSystem sys = element_to_constraints(tpl, state);
    for (int r = 0; r < cond.when_true.rows(); ++r) {
      QuadPoly obj(prog.nvars());
      obj.add_constant(cond.when_true.b(r));
      for (int j = 0; j < prog.nvars(); ++j)
        if (cond.when_true.A(r, j) != 0.0)
          obj.add_linear(j, -cond.when_true.A(r, j));
      Psm psm;
      try {
        psm = build_psm(obj, sys);
      } catch (const InfeasibleError&) {
        return true;  // empty state: vacuous
      }
      // Proving needs the minimum nonnegative, nothing more: the hinge
      // objective stops pushing once the target is met.
      Objective prove{ObjectiveKind::inclusion, 0.0};
      AggResult res = agg_search(psm, prove, cfg.agg);
      if (!res.found_feasible || res.bound_best < -kEpsMember) return false;
    }
    return true;
  }

  // Successor edge states of block b given its post-instruction state.
  std::vector<std::pair<int, std::optional<AbstractElement>>> out_edges(
      int b, const AbstractElement& out) const {
    const BasicBlock& blk = prog.blocks[b];
    std::vector<std::pair<int, std::optional<AbstractElement>>> edges;
    switch (blk.term) {
      case BasicBlock::Term::jump:
        edges.emplace_back(blk.next, out);
        break;
      case BasicBlock::Term::branch:
        edges.emplace_back(blk.next, filter(out, blk.cond.when_true));
        edges.emplace_back(blk.false_next, filter(out, blk.cond.when_false));
        break;
      case BasicBlock::Term::exit:
        break;
    }
    return edges;
  }
};

bool same_element(const AbstractElement& a, const AbstractElement& b) {
  return (a.c.array() == b.c.array()).all();
}

// Keeps rows the new join preserves; rows that dropped go unbounded.
AbstractElement widen(const AbstractElement& stable,
                      const AbstractElement& joined) {
  AbstractElement out = stable;
  for (int i = 0; i < out.rows(); ++i)
    if (joined.c(i) < stable.c(i)) out.c(i) = -kInf;
  return out;
}

}  // namespace

AnalysisResult analyze(const Program& prog, const RunConfig& cfg) {
  Analyzer az(prog, cfg);
  AnalysisResult res;
  res.tpl = az.tpl;
  res.entry.assign(prog.nblocks(), std::nullopt);

  std::vector<int> updates(prog.nblocks(), 0);
  auto by_rpo = [&](int a, int b) {
    return az.rpo_index[a] < az.rpo_index[b];
  };
  std::set<int, decltype(by_rpo)> worklist(by_rpo);

  res.entry[prog.entry] = top_element(az.tpl);
  worklist.insert(prog.entry);

  while (!worklist.empty() && res.transfers < cfg.max_transfers) {
    const int b = *worklist.begin();
    worklist.erase(worklist.begin());
    auto out = az.run_steps(b, *res.entry[b], nullptr);
    ++res.transfers;
    if (!out) continue;
    for (auto& [succ, sin] : az.out_edges(b, *out)) {
      if (!sin) continue;
      bool changed = false;
      if (!res.entry[succ]) {
        res.entry[succ] = std::move(*sin);
        changed = true;
      } else {
        AbstractElement joined = join(*res.entry[succ], *sin);
        if (!same_element(joined, *res.entry[succ])) {
          if (az.is_loop_head[succ] && updates[succ] >= cfg.widening_delay) {
            AbstractElement widened = widen(*res.entry[succ], joined);
            changed = !same_element(widened, *res.entry[succ]);
            if (changed) res.entry[succ] = std::move(widened);
          } else {
            res.entry[succ] = std::move(joined);
            changed = true;
          }
        }
      }
      if (changed) {
        ++updates[succ];
        worklist.insert(succ);
      }
    }
  }
  res.stabilized = worklist.empty();

  if (cfg.narrowing && res.stabilized) {
    // Recovery rounds: recompute every incoming edge from the current entries
    // and meet each joinable entry with the fresh join. The old entry and the
    // recomputed join both over-approximate the reachable states, and their
    // intersection is the rowwise max, so every row only tightens and no
    // round can lose or drift a bound. Rounds stop when nothing moves; the
    // block count caps them so a creeping row cannot spin. Entry blocks and
    // unreached blocks keep their states.
    for (int round = 0; round < prog.nblocks(); ++round) {
      std::vector<std::optional<AbstractElement>> incoming(prog.nblocks());
      for (int b = 0; b < prog.nblocks(); ++b) {
        if (!res.entry[b]) continue;
        auto out = az.run_steps(b, *res.entry[b], nullptr);
        ++res.transfers;
        if (!out) continue;
        for (auto& [succ, sin] : az.out_edges(b, *out)) {
          if (!sin) continue;
          if (!incoming[succ])
            incoming[succ] = std::move(*sin);
          else
            incoming[succ] = join(*incoming[succ], *sin);
        }
      }
      bool changed = false;
      for (int b = 0; b < prog.nblocks(); ++b) {
        if (b == prog.entry || !res.entry[b] || !incoming[b]) continue;
        const Eigen::VectorXd met = res.entry[b]->c.cwiseMax(incoming[b]->c);
        if ((met.array() > res.entry[b]->c.array()).any()) changed = true;
        res.entry[b]->c = met;
      }
      if (!changed) break;
    }
  }

  for (int b = 0; b < prog.nblocks(); ++b) {
    if (res.entry[b]) {
      az.run_steps(b, *res.entry[b], &res.asserts);
    } else {
      for (const auto& ins : prog.blocks[b].instrs) {
        if (const auto* c = std::get_if<InstrAssert>(&ins)) {
          AssertReport rep;
          rep.block = b;
          rep.line = c->line;
          rep.text = c->cond.text;
          rep.reachable = false;
          rep.proved = true;
          res.asserts.push_back(std::move(rep));
        }
      }
    }
  }
  std::sort(res.asserts.begin(), res.asserts.end(),
            [](const AssertReport& a, const AssertReport& b) {
              return a.line < b.line;
            });
  return res;
}

InvariantDelta compare_invariants(const AnalysisResult& a,
                                  const AnalysisResult& b, double tol) {
  InvariantDelta d;
  const size_t n = std::min(a.entry.size(), b.entry.size());
  for (size_t i = 0; i < n; ++i) {
    const bool la = a.entry[i].has_value();
    const bool lb = b.entry[i].has_value();
    if (!la && !lb) continue;
    ++d.blocks_compared;
    if (la && !lb) {
      ++d.rows_improved;  // b proved the block unreachable
      continue;
    }
    if (!la && lb) {
      ++d.rows_worsened;
      d.non_worse = false;
      continue;
    }
    const ElementDelta e = compare_elements(*a.entry[i], *b.entry[i], tol);
    d.rows_improved += e.improved;
    d.rows_worsened += e.worsened;
    if (e.worsened > 0) d.non_worse = false;
  }
  return d;
}

}  // namespace ustad
