#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ustad/oracle/audit.hpp"
#include "ustad/oracle/simplex.hpp"
#include "ustad/support/json_out.hpp"
#include "ustad/support/problem.hpp"

namespace {

using nlohmann::json;
using namespace ustad;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error("cannot write file: " + out_path);
  out << j.dump(2) << "\n";
}

struct SearchFlags {
  int epochs = 50;
  double eta = 0.5;
  double beta = 10.0;
  int p = 2;
  bool fixed_step = false;
  std::string objective = "precision";
  double target = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--epochs", epochs, "search epochs per row (0 scores the start point)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--eta", eta, "base step size");
    cmd->add_option("--beta", beta, "penalty step amplification");
    cmd->add_option("--p", p, "hinge penalty exponent")->check(CLI::Range(1, 2));
    cmd->add_flag("--fixed-step", fixed_step, "constant-rate stepping instead of adaptive");
    cmd->add_option("--objective", objective, "search objective")
        ->check(CLI::IsMember({"precision", "inclusion"}));
    cmd->add_option("--target", target, "inclusion objective target bound");
  }

  AggConfig agg() const {
    AggConfig c;
    c.epochs = epochs;
    c.eta = eta;
    c.beta = beta;
    c.p = p;
    c.step_mode = fixed_step ? StepMode::fixed : StepMode::adaptive;
    return c;
  }
  Objective obj() const {
    Objective o;
    o.kind = objective == "inclusion" ? ObjectiveKind::inclusion
                                      : ObjectiveKind::precision;
    o.target = target;
    return o;
  }
};

struct AnalyzeFlags {
  std::string domain = "interval";
  std::string merge = "all";
  int cap = 1;
  int widening_delay = 2;
  bool narrowing = false;
  int jobs = 1;
  SearchFlags search;

  void attach(CLI::App* cmd) {
    cmd->add_option("--domain", domain, "template domain")
        ->check(CLI::IsMember({"interval", "zones", "octagon"}));
    cmd->add_option("--merge", merge, "assignment fusion policy")
        ->check(CLI::IsMember({"all", "quad_only", "capped"}));
    cmd->add_option("--cap", cap, "max assignments per group for --merge capped")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--widening-delay", widening_delay,
                    "loop-head joins before bounds start dropping")
        ->check(CLI::NonNegativeNumber);
    cmd->add_flag("--narrowing", narrowing, "one recovery pass after stabilization");
    cmd->add_option("--jobs,-j", jobs, "threads for per-row searches")
        ->check(CLI::PositiveNumber);
    search.attach(cmd);
  }

  RunConfig run_config() const {
    RunConfig c;
    c.domain = template_kind_from_name(domain);
    c.merge.policy = merge_policy_from_name(merge);
    c.merge.cap = cap;
    c.agg = search.agg();
    c.objective = search.obj();
    c.widening_delay = widening_delay;
    c.narrowing = narrowing;
    c.jobs = jobs;
    return c;
  }
};

json oracle_json(const Problem& prob, uint64_t seed, int samples) {
  json o;
  SampleConfig sc;
  sc.seed = seed;
  if (samples > 0) sc.samples = samples;
  try {
    const SampleResult sr = sample_min(prob.objective, prob.sys, sc);
    o["sample_min"] = json_number(sr.min_value);
    o["sample_argmin"] = json_vector(sr.argmin);
    o["sample_clamped"] = sr.clamped;
  } catch (const InfeasibleError&) {
    o["sample_min"] = nullptr;
    o["region_empty"] = true;
  }
  if (prob.objective.degree() <= 1) {
    const int n = prob.vars.size();
    std::vector<std::vector<Rational>> A(prob.sys.rows(),
                                         std::vector<Rational>(n));
    std::vector<Rational> b(prob.sys.rows());
    std::vector<Rational> c(n);
    for (int r = 0; r < prob.sys.rows(); ++r) {
      for (int j = 0; j < n; ++j) A[r][j] = to_rational(prob.sys.A(r, j));
      b[r] = to_rational(prob.sys.b(r));
    }
    for (int j = 0; j < n; ++j) c[j] = to_rational(prob.objective.coeff_linear(j));
    const LpResult lp = lp_minimize(A, b, c);
    o["lp_status"] = lp.status == LpStatus::optimal
                         ? "optimal"
                         : lp.status == LpStatus::unbounded ? "unbounded"
                                                            : "infeasible";
    o["lp_min"] =
        lp.status == LpStatus::optimal ? json_number(to_double(lp.value))
                                       : json(nullptr);
  }
  return o;
}

int cmd_analyze(const std::string& file, const AnalyzeFlags& flags,
                const std::string& out_path) {
  const Program prog = parse_program(read_file(file));
  const AnalysisResult res = analyze(prog, flags.run_config());
  emit(invariants_json(prog, res), out_path);
  return 0;
}

int cmd_bound(const std::string& file, const SearchFlags& flags, uint64_t seed,
              int samples, bool oracle, const std::string& trace_path,
              const std::string& dump_path, const std::string& out_path) {
  const Problem prob = parse_problem(read_file(file));
  json out;
  out["schema"] = 1;
  out["objective"] = prob.objective.to_string(&prob.vars);

  Psm psm;
  try {
    psm = build_psm(prob.objective, prob.sys);
  } catch (const InfeasibleError& e) {
    out["status"] = "empty-region";
    out["note"] = std::string(e.what()) +
                  "; the minimum over an empty region is unconstrained";
    if (oracle) out["oracle"] = oracle_json(prob, seed, samples);
    emit(out, out_path);
    return 0;
  }

  const AggResult res = agg_search(psm, flags.obj(), flags.agg());
  out["status"] = "ok";
  out["params"] = psm.dim();
  out["admissible_rows"] = psm.theta.rows();
  out["epochs_run"] = res.epochs_run;
  out["found_admissible"] = res.found_feasible;
  out["raw_bound"] = json_number(res.bound_best);
  out["bound"] = json_number(reported_bound(res.bound_best));
  out["theta"] = json_vector(res.theta_best);

  if (!dump_path.empty()) emit(psm_json(psm, &prob.vars), dump_path);
  if (!trace_path.empty()) {
    std::ofstream tr(trace_path);
    if (!tr) throw Error("cannot write file: " + trace_path);
    for (const auto& e : res.trace) tr << agg_epoch_json(e).dump() << "\n";
  }
  if (oracle) out["oracle"] = oracle_json(prob, seed, samples);
  emit(out, out_path);
  return 0;
}

int cmd_merge(const std::string& file, const std::string& policy, int cap,
              const std::string& out_path) {
  const Program prog = parse_program(read_file(file));
  MergeConfig mc;
  mc.policy = merge_policy_from_name(policy);
  mc.cap = cap;

  json out;
  out["schema"] = 1;
  out["policy"] = policy;
  json blocks = json::array();
  for (int b = 0; b < prog.nblocks(); ++b) {
    json steps = json::array();
    std::vector<AssignStep> run;
    std::vector<std::string> texts;
    auto flush = [&] {
      if (run.empty()) return;
      for (const auto& g :
           merge_assignments(run, prog.nvars(), mc, &prog.vars)) {
        json jg;
        jg["kind"] = "group";
        json assigns = json::array();
        for (size_t k = 0; k < g.steps.size(); ++k)
          assigns.push_back(texts[g.first + k]);
        jg["assigns"] = std::move(assigns);
        json updates;
        for (const auto& [v, poly] : g.sigma.exprs)
          updates[prog.vars.name(v)] = poly.to_string(&prog.vars);
        jg["updates"] = std::move(updates);
        steps.push_back(std::move(jg));
      }
      run.clear();
      texts.clear();
    };
    for (const auto& ins : prog.blocks[b].instrs) {
      if (const auto* a = std::get_if<InstrAssign>(&ins)) {
        run.push_back({a->var, a->rhs});
        texts.push_back(a->text);
      } else {
        flush();
        json jp;
        if (const auto* s = std::get_if<InstrAssume>(&ins)) {
          jp["kind"] = "assume";
          jp["text"] = s->cond.text;
        } else if (const auto* c = std::get_if<InstrAssert>(&ins)) {
          jp["kind"] = "assert";
          jp["text"] = c->cond.text;
        } else if (const auto* h = std::get_if<InstrHavoc>(&ins)) {
          jp["kind"] = "havoc";
          jp["text"] = prog.vars.name(h->var);
        }
        steps.push_back(std::move(jp));
      }
    }
    flush();
    json jb;
    jb["block"] = b;
    jb["steps"] = std::move(steps);
    blocks.push_back(std::move(jb));
  }
  out["blocks"] = std::move(blocks);
  emit(out, out_path);
  return 0;
}

int cmd_audit(const std::string& file, uint64_t seed, int theta_samples,
              int samples, const std::string& out_path) {
  const Problem prob = parse_problem(read_file(file));
  json out;
  out["schema"] = 1;

  Psm psm;
  try {
    psm = build_psm(prob.objective, prob.sys);
  } catch (const InfeasibleError& e) {
    out["status"] = "empty-region";
    out["note"] = std::string(e.what()) +
                  "; every reported bound over an empty region is sound";
    out["violations"] = 0;
    emit(out, out_path);
    return 0;
  }

  AuditConfig ac;
  ac.seed = seed;
  ac.theta_samples = theta_samples;
  if (samples > 0) ac.sampling.samples = samples;
  const AuditResult res = soundness_audit(psm, ac);

  out["status"] = "ok";
  out["checked"] = res.checked;
  out["violations"] = res.violations;
  out["region_empty"] = res.region_empty;
  out["value_set_empty"] = res.value_set_empty;
  out["used_exact_lp"] = res.used_exact_lp;
  out["sample_reference"] = json_number(res.sample_reference);
  out["notes"] = res.notes;
  json findings = json::array();
  for (const auto& f : res.findings) {
    json jf;
    jf["theta"] = json_vector(f.theta);
    jf["reported"] = json_number(f.reported);
    jf["reference"] = json_number(f.reference);
    jf["kind"] = f.kind;
    findings.push_back(std::move(jf));
  }
  out["findings"] = std::move(findings);
  emit(out, out_path);
  return 0;
}

int cmd_compare(const std::string& file, const AnalyzeFlags& flags,
                int epochs_a, int epochs_b, const std::string& out_path) {
  const Program prog = parse_program(read_file(file));
  RunConfig ca = flags.run_config();
  RunConfig cb = flags.run_config();
  ca.agg.epochs = epochs_a;
  cb.agg.epochs = epochs_b;
  const AnalysisResult ra = analyze(prog, ca);
  const AnalysisResult rb = analyze(prog, cb);
  const InvariantDelta d = compare_invariants(ra, rb);

  json out;
  out["schema"] = 1;
  out["epochs_a"] = epochs_a;
  out["epochs_b"] = epochs_b;
  out["rows_improved"] = d.rows_improved;
  out["rows_worsened"] = d.rows_worsened;
  out["blocks_compared"] = d.blocks_compared;
  out["non_worse"] = d.non_worse;
  out["transfers_a"] = ra.transfers;
  out["transfers_b"] = rb.transfers;
  emit(out, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Template-domain invariants from tunable sound bound machines"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file; flags take precedence");

  std::string file, out_path;

  auto* analyze_cmd = app.add_subcommand("analyze", "fixpoint over a program");
  AnalyzeFlags aflags;
  analyze_cmd->add_option("file", file, "program (.ust)")->required();
  aflags.attach(analyze_cmd);
  analyze_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* bound_cmd =
      app.add_subcommand("bound", "one bound machine on one problem");
  SearchFlags bflags;
  uint64_t seed = 1;
  int samples = 0, theta_samples = 50;
  bool oracle = false;
  std::string trace_path, dump_path;
  bound_cmd->add_option("file", file, "problem (.prob)")->required();
  bflags.attach(bound_cmd);
  bound_cmd->add_option("--seed", seed, "oracle sampling seed");
  bound_cmd->add_option("--samples", samples, "oracle sample count");
  bound_cmd->add_flag("--oracle", oracle, "attach reference values");
  bound_cmd->add_option("--trace", trace_path, "write per-epoch JSONL here");
  bound_cmd->add_option("--dump", dump_path, "write the machine as JSON here");
  bound_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* merge_cmd =
      app.add_subcommand("merge", "show assignment fusion for a program");
  std::string policy = "all";
  int cap = 1;
  merge_cmd->add_option("file", file, "program (.ust)")->required();
  merge_cmd->add_option("--merge", policy, "fusion policy")
      ->check(CLI::IsMember({"all", "quad_only", "capped"}));
  merge_cmd->add_option("--cap", cap, "group size cap for capped")
      ->check(CLI::PositiveNumber);
  merge_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* audit_cmd =
      app.add_subcommand("audit", "soundness audit of one bound machine");
  audit_cmd->add_option("file", file, "problem (.prob)")->required();
  audit_cmd->add_option("--seed", seed, "sampling seed");
  audit_cmd->add_option("--theta-samples", theta_samples,
                        "admissible vectors to probe");
  audit_cmd->add_option("--samples", samples, "oracle sample count");
  audit_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* compare_cmd = app.add_subcommand(
      "compare", "row-bound movement between two epoch budgets");
  AnalyzeFlags cflags;
  int epochs_a = 0, epochs_b = 5;
  compare_cmd->add_option("file", file, "program (.ust)")->required();
  cflags.attach(compare_cmd);
  compare_cmd->add_option("--epochs-a", epochs_a, "first budget")
      ->check(CLI::NonNegativeNumber);
  compare_cmd->add_option("--epochs-b", epochs_b, "second budget")
      ->check(CLI::NonNegativeNumber);
  compare_cmd->add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(analyze_cmd))
      return cmd_analyze(file, aflags, out_path);
    if (app.got_subcommand(bound_cmd))
      return cmd_bound(file, bflags, seed, samples, oracle, trace_path,
                       dump_path, out_path);
    if (app.got_subcommand(merge_cmd))
      return cmd_merge(file, policy, cap, out_path);
    if (app.got_subcommand(audit_cmd))
      return cmd_audit(file, seed, theta_samples, samples, out_path);
    if (app.got_subcommand(compare_cmd))
      return cmd_compare(file, cflags, epochs_a, epochs_b, out_path);
  } catch (const ParseError& e) {
    std::cerr << "error: line " << e.line << ", column " << e.col << ": "
              << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
