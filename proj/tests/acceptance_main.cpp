// Acceptance gate: ten behavioral criteria over the whole library and CLI,
// one pass/fail line each. Exit code 0 iff every criterion passes.
// Usage: acceptance <source-dir> <cli-binary>

#include <sys/wait.h>

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "support/test_support.hpp"
#include "ustad/agg/search.hpp"
#include "ustad/core/element.hpp"
#include "ustad/eum/merge.hpp"
#include "ustad/eum/update_map.hpp"
#include "ustad/interp/analyze.hpp"
#include "ustad/interp/program.hpp"
#include "ustad/oracle/audit.hpp"
#include "ustad/oracle/rational.hpp"
#include "ustad/oracle/simplex.hpp"
#include "ustad/poly/parse.hpp"
#include "ustad/psm/psm.hpp"
#include "ustad/support/errors.hpp"
#include "ustad/support/problem.hpp"

using namespace ustad;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_src;  // source tree root, for programs/
std::string g_cli;  // path to the command-line binary

double secs_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool near(double x, double want, double tol) {
  return std::isfinite(x) && std::abs(x - want) <= tol;
}

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::string slurp(const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw std::runtime_error("cannot open " + path);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, fp)) > 0) out.append(buf, n);
  std::fclose(fp);
  return out;
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  CliRun r;
  const std::string cmd = g_cli + " " + args + " 2>/dev/null";
  std::FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int rc = pclose(p);
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

const char* kGapText =
    "vars: x y\n"
    "minimize: y - x\n"
    "subject to:\n"
    "x <= 10\n"
    "y >= 1\n"
    "y <= 11\n"
    "x - y <= -1\n"
    "x + y <= 21\n";

const char* kParabolaText =
    "vars: x y\n"
    "minimize: x^2 - x\n"
    "subject to:\n"
    "x >= 0\n"
    "y >= 0\n"
    "y <= 16\n"
    "x + y >= 0\n"
    "x - y >= -16\n";

// --------------------------------------------------------------------------
// 1. Two-variable linear program: frozen bound curve and the default search.

bool crit_linear_golden(std::vector<std::string>& notes) {
  const auto t0 = Clock::now();
  const Problem p = parse_problem(kGapText);
  const Psm psm = build_psm(p.objective, p.sys);
  bool ok = true;
  ok &= eval_bound(psm, vec2(0, 0)) == -9.0;
  ok &= eval_bound(psm, vec2(1, 0)) == 1.0;
  ok &= near(eval_bound(psm, vec2(0.3, 0)), -6.0, 1e-9);
  ok &= near(eval_bound(psm, vec2(0.6, 0)), -3.0, 1e-9);

  const AggResult r = agg_search(psm, Objective{}, AggConfig{});
  ok &= r.found_feasible;
  ok &= near(r.bound_best, 1.0, 1e-6);
  ok &= r.epochs_run <= 50;
  const double dt = secs_since(t0);
  ok &= dt < 0.1;
  notes.push_back(fmt("curve -9 / -6 / -3 / 1, search bound %.9f after %d "
                      "epochs, %.4fs",
                      r.bound_best, r.epochs_run, dt));
  return ok;
}

// --------------------------------------------------------------------------
// 2. Quadratic program: start point inadmissible, search pins the minimum.

bool crit_quadratic_golden(std::vector<std::string>& notes) {
  const auto t0 = Clock::now();
  const Problem p = parse_problem(kParabolaText);
  const Psm psm = build_psm(p.objective, p.sys);
  bool ok = true;
  ok &= eval_bound(psm, psm.zero_theta()) == -kInf;
  ok &= !psm.theta.contains(psm.zero_theta());

  AggConfig cfg;
  cfg.epochs = 200;
  const AggResult r = agg_search(psm, Objective{}, cfg);
  ok &= r.found_feasible;
  ok &= r.bound_best >= -0.2501 && r.bound_best <= -0.25;
  const double dt = secs_since(t0);
  ok &= dt < 0.5;
  notes.push_back(fmt("start inadmissible, bound %.9f after %d epochs, %.4fs",
                      r.bound_best, r.epochs_run, dt));
  return ok;
}

// --------------------------------------------------------------------------
// 3. Start-point value equals an independent interval relaxation, and the
//    start point is inadmissible exactly when that relaxation diverges.

bool crit_interval_equivalence(std::vector<std::string>& notes) {
  std::mt19937_64 g(31001);
  int checked = 0, finite = 0, divergent = 0, empty = 0, mismatches = 0;
  for (int trial = 0; trial < 340; ++trial) {
    const ts::RandomProblem rp =
        ts::random_problem(g, ts::irand(g, 1, 3), ts::irand(g, 0, 5), true);
    const ts::IntervalRef ref = ts::interval_relaxation(rp.f, rp.sys);
    ++checked;
    try {
      const Psm psm = build_psm(rp.f, rp.sys);
      if (ref.box_empty) {
        ++mismatches;
        continue;
      }
      const Eigen::VectorXd zero = psm.zero_theta();
      const bool member =
          !psm.theta.contradictory && psm.theta.contains(zero);
      const double mine = eval_bound(psm, zero);
      if (ref.value == -kInf) {
        ++divergent;
        if (member || mine != -kInf) ++mismatches;
      } else {
        ++finite;
        if (!member || !nearly_equal(mine, ref.value, 1e-9)) ++mismatches;
      }
    } catch (const InfeasibleError&) {
      ++empty;
      if (!ref.box_empty) ++mismatches;
    }
  }
  notes.push_back(fmt("%d problems: %d finite, %d divergent, %d empty, "
                      "%d mismatches",
                      checked, finite, divergent, empty, mismatches));
  return checked >= 300 && finite > 100 && divergent > 10 && mismatches == 0;
}

// --------------------------------------------------------------------------
// 4. Independent soundness audit: sampled attained values and, on linear
//    instances, the exact rational simplex minimum.

bool crit_soundness_audit(std::vector<std::string>& notes) {
  const auto t0 = Clock::now();
  std::mt19937_64 g(47002);
  int audited = 0, skipped = 0, violations = 0, thetas = 0, lp_backed = 0;
  while (audited < 500) {
    const ts::RandomProblem rp =
        ts::random_problem(g, ts::irand(g, 1, 3), ts::irand(g, 0, 5), true);
    Psm psm;
    try {
      psm = build_psm(rp.f, rp.sys);
    } catch (const InfeasibleError&) {
      ++skipped;
      continue;
    }
    AuditConfig cfg;
    cfg.seed = 9000 + audited;
    cfg.theta_samples = 50;
    cfg.sampling.seed = 77000 + audited;
    cfg.sampling.samples = 2000;
    const AuditResult res = soundness_audit(psm, cfg);
    ++audited;
    thetas += res.checked;
    violations += res.violations;
    lp_backed += res.used_exact_lp;
  }
  const double dt = secs_since(t0);
  notes.push_back(fmt("%d problems audited (%d empty skipped), %d admissible "
                      "points, %d with exact reference, %d violations, %.1fs",
                      audited, skipped, thetas, lp_backed, violations, dt));
  return audited >= 500 && violations == 0 && dt < 120.0;
}

// --------------------------------------------------------------------------
// 5. Bounded linear programs: the search lands near the exact minimum,
//    never above it, and never below the start-point value.

bool crit_lp_completeness(std::vector<std::string>& notes) {
  std::mt19937_64 g(58003);
  int solved = 0, hits = 0, overs = 0, floor_fails = 0;
  double worst_gap = 0.0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = ts::irand(g, 1, 3);
    const ts::RandomProblem rp =
        ts::random_bounded_lp(g, n, ts::irand(g, 2 * n, 6));

    std::vector<std::vector<Rational>> A(rp.sys.rows(),
                                         std::vector<Rational>(n));
    std::vector<Rational> b(rp.sys.rows()), c(n);
    for (int i = 0; i < rp.sys.rows(); ++i) {
      for (int j = 0; j < n; ++j) A[i][j] = to_rational(rp.sys.A(i, j));
      b[i] = to_rational(rp.sys.b(i));
    }
    const Eigen::VectorXd& lin = rp.f.linear();
    for (int j = 0; j < n; ++j) c[j] = to_rational(lin(j));
    const LpResult lp = lp_minimize(A, b, c);
    if (lp.status != LpStatus::optimal) return false;  // box keeps it bounded
    const double lp_min =
        to_double(lp.value + to_rational(rp.f.constant_term()));

    const Psm psm = build_psm(rp.f, rp.sys);
    AggConfig cfg;
    cfg.epochs = 500;
    const AggResult r = agg_search(psm, Objective{}, cfg);
    ++solved;
    if (r.bound_best > lp_min + 1e-9) ++overs;
    const double gap = lp_min - r.bound_best;
    worst_gap = std::max(worst_gap, gap);
    if (gap <= 1e-2) ++hits;
    if (!(r.bound_best >= r.trace.at(0).bound)) ++floor_fails;
  }
  notes.push_back(fmt("%d instances: %d within 1e-2 (worst gap %.3g), "
                      "%d above the exact minimum, %d below the start value",
                      solved, hits, worst_gap, overs, floor_fails));
  return solved >= 100 && overs == 0 && floor_fails == 0 &&
         hits * 10 >= solved * 9;
}

// --------------------------------------------------------------------------
// 6. Analytic gradient against central differences away from the branch
//    boundaries of the piecewise bound.

bool crit_gradient_check(std::vector<std::string>& notes) {
  std::mt19937_64 g(69004);
  const double h = 1e-6;
  int psms = 0, compared = 0, agreed = 0, trials = 0;
  while (psms < 200 && trials < 4000) {
    ++trials;
    const ts::RandomProblem rp =
        ts::random_problem(g, ts::irand(g, 1, 3), ts::irand(g, 0, 4), true);
    Psm psm;
    try {
      psm = build_psm(rp.f, rp.sys);
    } catch (const InfeasibleError&) {
      continue;
    }
    if (psm.dim() == 0 || psm.theta.contradictory) continue;
    // regions that pin parameters to equalities contribute nothing; scan
    // random draws for admissible interior points with a finite bound
    int used = 0, coords_here = 0;
    for (int k = 0; k < 30 && used < 2; ++k) {
      Eigen::VectorXd theta(psm.dim());
      for (int i = 0; i < psm.dim(); ++i) {
        const bool is_mult = i < psm.layout.m_lambda;
        theta(i) = is_mult ? ts::irand(g, 0, 400) * 5e-3
                           : ts::irand(g, -400, 400) * 5e-3;
      }
      if (!psm.theta.contains(theta, 0.0)) continue;
      if (eval_bound_raw(psm, theta) == -kInf) continue;
      ++used;

      const Eigen::VectorXd grad = grad_bound(psm, theta);
      const std::vector<int> sig = ts::branch_signature(psm, theta);
      for (int i = 0; i < psm.dim(); ++i) {
        Eigen::VectorXd tp = theta, tm = theta;
        tp(i) += h;
        tm(i) -= h;
        if (ts::branch_signature(psm, tp) != sig) continue;
        if (ts::branch_signature(psm, tm) != sig) continue;
        const double lo = eval_bound_raw(psm, tm);
        const double hi = eval_bound_raw(psm, tp);
        if (lo == -kInf || hi == -kInf) continue;
        const double fd = (hi - lo) / (2.0 * h);
        const double scale = std::max({1.0, std::abs(fd), std::abs(grad(i))});
        ++coords_here;
        if (std::abs(fd - grad(i)) <= 1e-4 * scale) ++agreed;
      }
    }
    if (coords_here > 0) ++psms;
    compared += coords_here;
  }
  notes.push_back(fmt("%d maps measured, %d coordinates compared, %d agreed",
                      psms, compared, agreed));
  return psms >= 200 && compared >= 400 && agreed * 20 >= compared * 19;
}

// --------------------------------------------------------------------------
// 7. Assignment fusion preserves concrete semantics exactly, including the
//    canonical degree-forced split.

Eigen::VectorXd apply_groups(const std::vector<MergeGroup>& groups,
                             Eigen::VectorXd st) {
  for (const auto& grp : groups) {
    Eigen::VectorXd next = st;
    for (const auto& [v, poly] : grp.sigma.exprs) next(v) = poly.eval(st);
    st = next;
  }
  return st;
}

bool crit_merge_semantics(std::vector<std::string>& notes) {
  // Split golden: [x:=2a; y:=x*b; z:=y*c-a; w:=z+d] folds into exactly two
  // groups; y*c would push the first group's map past degree two.
  VarTable vars;
  for (const char* n : {"x", "y", "z", "w", "a", "b", "c", "d"}) vars.add(n);
  std::vector<AssignStep> fig;
  auto assign = [&](const char* v, const char* rhs) {
    VarTable copy = vars;
    fig.push_back({vars.find(v), parse_poly(rhs, copy, false)});
  };
  assign("x", "2*a");
  assign("y", "x*b");
  assign("z", "y*c - a");
  assign("w", "z + d");
  const auto groups =
      merge_assignments(fig, vars.size(), {MergePolicy::all, 1}, &vars);
  bool ok = groups.size() == 2;
  if (ok) {
    ok &= groups[0].first == 0 && groups[0].steps.size() == 2;
    ok &= groups[1].first == 2 && groups[1].steps.size() == 2;
    ok &= groups[0].sigma.find(1) != nullptr &&
          groups[0].sigma.find(1)->to_string(&vars) == "2*a*b";
    ok &= groups[1].sigma.find(3) != nullptr &&
          groups[1].sigma.find(3)->to_string(&vars) == "y*c - a + d";
  }
  notes.push_back(fmt("split golden: %zu groups%s", groups.size(),
                      ok ? ", maps match" : ", MISMATCH"));

  // Battery: small integer coefficients and states keep every intermediate
  // value exactly representable, so == comparison is legitimate.
  std::mt19937_64 g(81005);
  int sequences = 0, states = 0, mismatches = 0, multi_group = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = ts::irand(g, 2, 3);
    const int len = ts::irand(g, 1, 6);
    std::vector<AssignStep> seq;
    int quads = 0;
    for (int s = 0; s < len; ++s) {
      QuadPoly rhs(n);
      rhs.add_constant(ts::irand(g, -1, 1));
      for (int j = 0; j < n; ++j)
        if (ts::coin(g, 0.7)) rhs.add_linear(j, ts::irand(g, -1, 1));
      // quadratic growth is confined to the first steps so that repeated
      // squaring cannot push values past exact double range
      if (quads < 2 && s < 3 && ts::coin(g, 0.4)) {
        rhs.add_quad(ts::irand(g, 0, n - 1), ts::irand(g, 0, n - 1),
                     ts::irand(g, -1, 1) == 0 ? 1 : -1);
        ++quads;
      }
      rhs.prune();
      seq.push_back({ts::irand(g, 0, n - 1), rhs});
    }
    const auto gs = merge_assignments(seq, n, {MergePolicy::all, 1});
    size_t covered = 0;
    for (const auto& grp : gs) covered += grp.steps.size();
    if (covered != seq.size()) {
      ++mismatches;
      continue;
    }
    ++sequences;
    multi_group += gs.size() > 1;
    for (int st = 0; st < 20; ++st) {
      Eigen::VectorXd v0(n);
      for (int j = 0; j < n; ++j) v0(j) = ts::irand(g, -2, 2);
      Eigen::VectorXd direct = v0;
      for (const auto& step : seq) direct(step.var) = step.rhs.eval(direct);
      const Eigen::VectorXd merged = apply_groups(gs, v0);
      ++states;
      for (int j = 0; j < n; ++j)
        if (direct(j) != merged(j)) {
          ++mismatches;
          break;
        }
    }
  }
  notes.push_back(fmt("%d sequences x 20 states (%d split into several "
                      "groups), %d state mismatches",
                      sequences, multi_group, mismatches));
  return ok && sequences >= 500 && states == sequences * 20 &&
         mismatches == 0 && multi_group > 50;
}

// --------------------------------------------------------------------------
// 8. End-to-end runs of the command-line analyzer on the two bundled loop
//    programs, checking the loop-head invariants it prints.

bool crit_cli_end_to_end(std::vector<std::string>& notes) {
  const std::string base =
      " --domain octagon --merge all --epochs 5";
  bool ok = true;

  const auto t0 = Clock::now();
  const CliRun a =
      run_cli("analyze " + g_src + "/programs/fig2a.ust" + base);
  const double dt_a = secs_since(t0);
  double xa = -kInf;
  if (a.code == 0) {
    const json j = json::parse(a.out);
    for (const auto& blk : j.at("blocks"))
      if (blk.at("block") == 1 && blk.at("reachable").get<bool>()) {
        const auto& bound = blk.at("bounds").at(1);  // row -x >= c
        if (!bound.is_null()) xa = bound.get<double>();
      }
  }
  ok &= a.code == 0 && xa >= 0.0 && dt_a < 10.0;
  notes.push_back(fmt("countdown loop: head row -x >= %.6g (x <= 0 %s), "
                      "%.2fs",
                      xa, xa >= 0.0 ? "entailed" : "NOT entailed", dt_a));

  const auto t1 = Clock::now();
  const CliRun b =
      run_cli("analyze " + g_src + "/programs/fig2b.ust" + base);
  const double dt_b = secs_since(t1);
  double diff_lo = -kInf, diff_hi = -kInf;  // rows x-y >= c5, -x+y >= c6
  if (b.code == 0) {
    const json j = json::parse(b.out);
    for (const auto& blk : j.at("blocks"))
      if (blk.at("block") == 1 && blk.at("reachable").get<bool>()) {
        const auto& b5 = blk.at("bounds").at(5);
        const auto& b6 = blk.at("bounds").at(6);
        if (!b5.is_null()) diff_lo = b5.get<double>();
        if (!b6.is_null()) diff_hi = b6.get<double>();
      }
  }
  ok &= b.code == 0 && diff_lo >= 20.0 && diff_hi >= -20.0 && dt_b < 10.0;
  notes.push_back(fmt("doubling loop: head rows x-y >= %.6g and y-x >= %.6g "
                      "(x-y = 20 %s), %.2fs",
                      diff_lo, diff_hi,
                      diff_lo >= 20.0 && diff_hi >= -20.0 ? "entailed"
                                                          : "NOT entailed",
                      dt_b));
  return ok;
}

// --------------------------------------------------------------------------
// 9. Larger search budgets never degrade invariants: against the zero-epoch
//    baseline, improved rows grow monotonically and no row worsens.

bool crit_epoch_monotonicity(std::vector<std::string>& notes) {
  struct Prog {
    Program prog;
    TemplateKind domain;
  };
  std::vector<Prog> progs;
  progs.push_back({parse_program(slurp(g_src + "/programs/fig2a.ust")),
                   TemplateKind::octagon});
  progs.push_back({parse_program(slurp(g_src + "/programs/fig2b.ust")),
                   TemplateKind::octagon});
  std::mt19937_64 g(92006);
  for (int i = 0; i < 20; ++i)
    progs.push_back(
        {parse_program(ts::random_loop_program(g, ts::irand(g, 1, 3))),
         TemplateKind::interval});

  int worsened_total = 0, mono_breaks = 0, improved_last = 0;
  for (const auto& pr : progs) {
    std::vector<AnalysisResult> res;
    for (int k = 0; k <= 5; ++k) {
      RunConfig cfg;
      cfg.domain = pr.domain;
      cfg.agg.epochs = k;
      res.push_back(analyze(pr.prog, cfg));
    }
    int prev_improved = 0;
    for (int k = 0; k <= 5; ++k) {
      const InvariantDelta d = compare_invariants(res[0], res[k]);
      worsened_total += d.rows_worsened;
      if (d.rows_improved < prev_improved) ++mono_breaks;
      prev_improved = std::max(prev_improved, d.rows_improved);
      if (k == 5) improved_last += d.rows_improved;
    }
  }
  notes.push_back(fmt("%zu programs x budgets 0..5: %d rows worsened, "
                      "%d monotonicity breaks, %d rows improved at budget 5",
                      progs.size(), worsened_total, mono_breaks,
                      improved_last));
  return progs.size() == 22 && worsened_total == 0 && mono_breaks == 0;
}

// --------------------------------------------------------------------------
// 10. Every state reached by concrete execution lies inside the computed
//     invariant of the block it enters.

bool crit_analyzer_soundness(std::vector<std::string>& notes) {
  std::mt19937_64 g(10307);
  int programs = 0, runs = 0, visits = 0, violations = 0;
  for (int t = 0; t < 200; ++t) {
    const Program prog =
        parse_program(ts::random_loop_free_program(g, ts::irand(g, 1, 3)));
    const AnalysisResult res = analyze(prog, RunConfig{});
    ++programs;
    for (int r = 0; r < 100; ++r) {
      Eigen::VectorXd st(prog.nvars());
      for (int j = 0; j < prog.nvars(); ++j) st(j) = ts::irand(g, -8, 8);
      ++runs;
      for (const ts::ExecVisit& v : ts::execute_program(prog, st, g)) {
        ++visits;
        if (!res.entry[v.block] ||
            !contains_point(res.tpl, *res.entry[v.block], v.state))
          ++violations;
      }
    }
  }
  notes.push_back(fmt("%d programs x 100 runs, %d block entries checked, "
                      "%d outside their invariant",
                      programs, visits, violations));
  return programs >= 200 && runs == programs * 100 && violations == 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <source-dir> <cli-binary>\n");
    return 2;
  }
  g_src = argv[1];
  g_cli = argv[2];

  struct Criterion {
    const char* label;
    std::function<bool(std::vector<std::string>&)> fn;
  };
  const std::vector<Criterion> criteria = {
      {"linear golden run: frozen curve and default search optimum",
       crit_linear_golden},
      {"quadratic golden run: inadmissible start, exact minimum found",
       crit_quadratic_golden},
      {"start-point bound equals the independent interval relaxation",
       crit_interval_equivalence},
      {"sampled and exact-simplex soundness audit finds no violation",
       crit_soundness_audit},
      {"bounded linear programs: near-exact, never unsound, never regress",
       crit_lp_completeness},
      {"analytic gradient matches central differences off branch edges",
       crit_gradient_check},
      {"assignment fusion is exact, canonical split produces two groups",
       crit_merge_semantics},
      {"command-line analyzer entails the bundled loop invariants",
       crit_cli_end_to_end},
      {"larger search budgets never worsen invariant rows",
       crit_epoch_monotonicity},
      {"concrete executions stay inside computed invariants",
       crit_analyzer_soundness},
  };

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    std::vector<std::string> notes;
    bool ok = false;
    try {
      ok = criteria[i].fn(notes);
    } catch (const std::exception& e) {
      notes.push_back(std::string("exception: ") + e.what());
    }
    std::printf("[%2zu] %s  %s (%.2fs)\n", i + 1, ok ? "PASS" : "FAIL",
                criteria[i].label, secs_since(t0));
    for (const auto& n : notes) std::printf("      %s\n", n.c_str());
    std::fflush(stdout);
    failed += !ok;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
