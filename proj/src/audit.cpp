#include "ustad/oracle/audit.hpp"

#include <random>

#include "ustad/oracle/simplex.hpp"

namespace ustad {
namespace {

// Admissible parameter vectors with zero tolerance: every reported bound at
// such a vector is claimed sound, so they are the right audit probes.
std::vector<Eigen::VectorXd> draw_admissible(const Psm& psm, uint64_t seed,
                                             int want,
                                             std::vector<std::string>* notes) {
  std::vector<Eigen::VectorXd> out;
  const int P = psm.dim();
  const ParamSpace& th = psm.theta;
  if (th.contradictory) return out;
  if (P == 0) {
    Eigen::VectorXd empty(0);
    if (th.contains(empty, 0.0)) out.push_back(empty);
    return out;
  }

  auto admissible = [&](const Eigen::VectorXd& t) {
    return th.violation(t) <= 0.0;
  };

  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(P);
  if (admissible(zero)) out.push_back(zero);

  Eigen::VectorXd x;
  try {
    double margin = 0.0;
    x = interior_point(ConstraintSystem(th.M, th.h), &margin);
  } catch (const InfeasibleError&) {
    if (out.empty()) notes->push_back("admissible region is empty");
    return out;
  }
  if (admissible(x)) {
    if (out.empty() || (x - out.front()).norm() > 0) out.push_back(x);
  } else if (out.empty()) {
    notes->push_back(
        "admissible region too thin to probe in double precision");
    return out;
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  Eigen::VectorXd cur = out.back();
  int attempts = 0;
  while (static_cast<int>(out.size()) < want && attempts < want * 40) {
    ++attempts;
    Eigen::VectorXd d(P);
    for (int j = 0; j < P; ++j) d(j) = gauss(rng);
    if (d.norm() == 0.0) continue;
    d /= d.norm();
    double lo = -kInf, hi = kInf;
    bool bad = false;
    for (int r = 0; r < th.rows(); ++r) {
      const double ad = th.M.row(r).dot(d);
      const double slack = th.h(r) - th.M.row(r).dot(cur);
      if (ad > 0.0)
        hi = std::min(hi, slack / ad);
      else if (ad < 0.0)
        lo = std::max(lo, slack / ad);
      else if (slack < 0.0)
        bad = true;
    }
    lo = std::max(lo, -1e6);
    hi = std::min(hi, 1e6);
    if (bad || !(lo <= hi)) continue;
    const Eigen::VectorXd cand = cur + (lo + unif(rng) * (hi - lo)) * d;
    if (!admissible(cand)) continue;
    cur = cand;
    out.push_back(cand);
  }
  return out;
}

}  // namespace

AuditResult soundness_audit(const Psm& psm, const AuditConfig& cfg) {
  AuditResult res;

  SampleConfig sc = cfg.sampling;
  sc.seed = cfg.seed;
  bool have_sample = false;
  try {
    const SampleResult sr = sample_min(psm.objective, psm.original, sc);
    res.sample_reference = sr.min_value;
    have_sample = true;
    if (sr.clamped)
      res.notes.push_back(
          "sampling walk was clamped; reference may be loose");
  } catch (const InfeasibleError&) {
    res.value_set_empty = true;
    res.notes.push_back("constraint region is empty; all bounds are sound");
  }

  // Exact reference for linear objectives.
  bool lp_applies = psm.objective.degree() <= 1;
  LpResult lp;
  if (lp_applies) {
    const int n = psm.original.nvars();
    std::vector<std::vector<Rational>> A(psm.original.rows(),
                                         std::vector<Rational>(n));
    std::vector<Rational> b(psm.original.rows());
    std::vector<Rational> c(n);
    for (int r = 0; r < psm.original.rows(); ++r) {
      for (int j = 0; j < n; ++j) A[r][j] = to_rational(psm.original.A(r, j));
      b[r] = to_rational(psm.original.b(r));
    }
    for (int j = 0; j < n; ++j) c[j] = to_rational(psm.objective.coeff_linear(j));
    lp = lp_minimize(A, b, c);
    res.used_exact_lp = true;
    if (lp.status == LpStatus::infeasible) res.value_set_empty = true;
  }

  const auto thetas =
      draw_admissible(psm, cfg.seed + 0x9e3779b97f4a7c15ULL,
                      cfg.theta_samples, &res.notes);
  if (thetas.empty()) {
    res.region_empty = true;
    return res;
  }

  for (const auto& theta : thetas) {
    ++res.checked;
    const double raw = eval_bound(psm, theta, 0.0);
    if (raw == -kInf) continue;  // no claim made
    const double reported = reported_bound(raw);

    if (have_sample && reported > res.sample_reference + kEpsAudit) {
      ++res.violations;
      res.findings.push_back(
          {theta, reported, res.sample_reference, "above attained value"});
      continue;
    }
    if (lp_applies && !res.value_set_empty) {
      if (lp.status == LpStatus::unbounded) {
        ++res.violations;
        res.findings.push_back(
            {theta, reported, -kInf, "finite bound on unbounded minimum"});
      } else {
        // the machine bounds the full objective, constant included
        const Rational exact =
            lp.value + to_rational(psm.objective.constant_term());
        if (to_rational(round_up_ulp(reported)) > exact) {
          ++res.violations;
          res.findings.push_back(
              {theta, reported, to_double(exact), "above exact minimum"});
        }
      }
    }
  }
  return res;
}

}  // namespace ustad
