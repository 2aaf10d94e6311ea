#include "ustad/oracle/sampling.hpp"

#include <random>

#include "ustad/oracle/simplex.hpp"

namespace ustad {
namespace {

// Chord of {x + t d feasible, |x_j + t d_j| <= clamp} around t = 0.
// Assumes x itself is feasible; returns false when the chord is degenerate.
bool chord_extent(const ConstraintSystem& sys, double clamp,
                  const Eigen::VectorXd& x, const Eigen::VectorXd& d,
                  double* tmin, double* tmax, bool* hit_clamp) {
  double lo = -kInf, hi = kInf;
  for (int r = 0; r < sys.rows(); ++r) {
    const double ad = sys.A.row(r).dot(d);
    const double slack = sys.b(r) - sys.A.row(r).dot(x);
    if (ad > 0.0)
      hi = std::min(hi, slack / ad);
    else if (ad < 0.0)
      lo = std::max(lo, slack / ad);
    else if (slack < 0.0)
      return false;  // x drifted out along a normal-orthogonal direction
  }
  for (int j = 0; j < x.size(); ++j) {
    if (d(j) == 0.0) continue;
    const double up = (clamp - x(j)) / d(j);
    const double dn = (-clamp - x(j)) / d(j);
    const double a = std::min(up, dn);
    const double b = std::max(up, dn);
    if (a > lo) {
      lo = a;
      *hit_clamp = true;
    }
    if (b < hi) {
      hi = b;
      *hit_clamp = true;
    }
  }
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) return false;
  *tmin = lo;
  *tmax = hi;
  return true;
}

bool feasible_exact(const ConstraintSystem& sys, const Eigen::VectorXd& x) {
  for (int r = 0; r < sys.rows(); ++r)
    if (sys.A.row(r).dot(x) > sys.b(r)) return false;
  return true;
}

}  // namespace

Eigen::VectorXd interior_point(const ConstraintSystem& sys, double* margin) {
  const int n = sys.nvars();
  const int m = sys.rows();
  // Variables (v, t): minimize -t subject to A v + t <= b, t <= 1.
  std::vector<std::vector<Rational>> A(m + 1,
                                       std::vector<Rational>(n + 1, Rational(0)));
  std::vector<Rational> b(m + 1, Rational(0));
  std::vector<Rational> c(n + 1, Rational(0));
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < n; ++j) A[r][j] = to_rational(sys.A(r, j));
    A[r][n] = 1;
    b[r] = to_rational(sys.b(r));
  }
  A[m][n] = 1;
  b[m] = 1;
  c[n] = -1;

  const LpResult lp = lp_minimize(A, b, c);
  if (lp.status == LpStatus::infeasible || -lp.value < 0)
    throw InfeasibleError("constraint region is empty");
  if (lp.status != LpStatus::optimal)
    throw Error("interior_point: margin program failed to solve");

  Eigen::VectorXd x(n);
  for (int j = 0; j < n; ++j) x(j) = to_double(lp.point[j]);
  if (margin) *margin = to_double(-lp.value);
  return x;
}

SampleResult sample_min(const QuadPoly& f, const ConstraintSystem& sys,
                        const SampleConfig& cfg) {
  const int n = sys.nvars();
  SampleResult res;
  res.argmin = Eigen::VectorXd::Zero(n);

  double margin = 0.0;
  Eigen::VectorXd x = interior_point(sys, &margin);
  if (!feasible_exact(sys, x)) {
    // Exact solve guarantees rational feasibility; double rounding can still
    // poke a hair outside. Pull back by rescanning toward the origin-side
    // point 0 if that is feasible, else give up on the walk and use corners.
    x = Eigen::VectorXd::Zero(n);
  }

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(1e-9, 1.0 - 1e-9);

  auto consider = [&](const Eigen::VectorXd& p) {
    if (!feasible_exact(sys, p)) return;
    const double val = f.eval(p);
    ++res.evaluated;
    if (val < res.min_value) {
      res.min_value = val;
      res.argmin = p;
    }
  };

  if (feasible_exact(sys, x)) {
    consider(x);
    for (int it = 0; it < cfg.samples + cfg.burnin; ++it) {
      Eigen::VectorXd d(n);
      for (int j = 0; j < n; ++j) d(j) = gauss(rng);
      const double dn = d.norm();
      if (dn == 0.0) continue;
      d /= dn;
      double tmin, tmax;
      bool hit_clamp = false;
      if (!chord_extent(sys, cfg.clamp, x, d, &tmin, &tmax, &hit_clamp))
        continue;
      if (hit_clamp) res.clamped = true;
      const Eigen::VectorXd cand = x + (tmin + unif(rng) * (tmax - tmin)) * d;
      if (!feasible_exact(sys, cand)) continue;
      x = cand;
      if (it >= cfg.burnin) consider(x);
    }
  }

  // Corners of the variable box, filtered through the full system. These pick
  // up the bilinear and boundary minima a random walk visits rarely.
  const BoxSplit split = extract_box(sys);
  std::vector<int> bounded;
  for (int j = 0; j < n; ++j)
    if (split.box.bounded_below(j) || split.box.bounded_above(j))
      bounded.push_back(j);
  if (static_cast<int>(bounded.size()) <= 16) {
    const int combos = 1 << bounded.size();
    for (int mask = 0; mask < combos; ++mask) {
      Eigen::VectorXd p = res.evaluated > 0 ? res.argmin
                                            : Eigen::VectorXd::Zero(n);
      bool ok = true;
      for (size_t k = 0; k < bounded.size(); ++k) {
        const int j = bounded[k];
        const double v = (mask >> k) & 1 ? split.box.hi(j) : split.box.lo(j);
        if (!std::isfinite(v)) {
          ok = false;
          break;
        }
        p(j) = v;
      }
      if (ok) consider(p);
    }
  }

  if (res.evaluated == 0) {
    // Thin region whose double rendering is empty: fall back to the exact
    // point even if rounding leaves it marginally outside.
    res.min_value = f.eval(x);
    res.argmin = x;
    res.evaluated = 1;
  }
  return res;
}

}  // namespace ustad
