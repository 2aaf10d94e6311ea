#include "ustad/psm/psm.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ustad/core/ext_scalar.hpp"

namespace ustad {
namespace {

struct RowCollector {
  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> rhs;
  std::vector<std::string> notes;
  int dim;

  explicit RowCollector(int dim_) : dim(dim_) {}

  void add(const Eigen::RowVectorXd& w, double h, std::string note) {
    rows.push_back(w);
    rhs.push_back(h);
    notes.push_back(std::move(note));
  }
  void add_unit(int param, double sign, double h, std::string note) {
    Eigen::RowVectorXd w = Eigen::RowVectorXd::Zero(dim);
    w(param) = sign;
    add(w, h, std::move(note));
  }
  void add_contradiction(std::string note) {
    add(Eigen::RowVectorXd::Zero(dim), -1.0, std::move(note));
  }
};

std::string vtag(int j) { return "v" + std::to_string(j); }

// Exact interval minimum of k * v, v in [lo, hi], plus d(min)/dk. The k = 0
// ties take the lower-endpoint branch.
void linear_min(double k, double lo, double hi, double* value, double* dk) {
  const bool blo = lo > -kInf;
  const bool bhi = hi < kInf;
  if (blo && bhi) {
    const double at_lo = k * lo;
    const double at_hi = k * hi;
    if (at_lo <= at_hi) {
      *value = at_lo;
      *dk = lo;
    } else {
      *value = at_hi;
      *dk = hi;
    }
  } else if (!blo && bhi) {
    if (k <= 0.0) {
      *value = k * hi;
      *dk = hi;
    } else {
      *value = -kInf;
      *dk = 0.0;
    }
  } else if (blo && !bhi) {
    if (k >= 0.0) {
      *value = k * lo;
      *dk = lo;
    } else {
      *value = -kInf;
      *dk = 0.0;
    }
  } else {
    *value = (k == 0.0) ? 0.0 : -kInf;
    *dk = 0.0;
  }
}

// Exact interval minimum of a * v^2 + b * v plus d(min)/db.
void quad_min(double a, double b, double lo, double hi, double* value,
              double* db) {
  const bool blo = lo > -kInf;
  const bool bhi = hi < kInf;
  if (a > 0.0) {
    const double vstar = -b / (2.0 * a);
    if ((!blo || vstar >= lo) && (!bhi || vstar <= hi)) {
      *value = -b * b / (4.0 * a);
      *db = vstar;
      return;
    }
  } else if (!blo || !bhi) {
    *value = -kInf;
    *db = 0.0;
    return;
  }
  // Convex with the vertex outside, or concave over a bounded interval:
  // the minimum sits at a finite endpoint. Ties take the lower endpoint.
  *value = kInf;
  *db = 0.0;
  for (double e : {lo, hi}) {
    if (!std::isfinite(e)) continue;
    const double ve = a * e * e + b * e;
    if (ve < *value) {
      *value = ve;
      *db = e;
    }
  }
}

struct BilinEval {
  double value;
  double db;
  double dc;
};

// Exact interval minimum of a*vi*vk + b*vi + c*vk over a box, through the
// factorization (a*vi + c) * (vk + b/a) - b*c/a. Corner ties take the first
// of (l1 l2, l1 u2, u1 l2, u1 u2); infinite factors contribute no gradient.
BilinEval bilin_min(const BilinSub& s, double b, double c) {
  const double e_lo = s.a > 0.0 ? s.li : s.ui;
  const double e_hi = s.a > 0.0 ? s.ui : s.li;
  const double l1 = s.a * e_lo + c;  // -inf when e_lo is infinite
  const double u1 = s.a * e_hi + c;  // +inf when e_hi is infinite
  const double l2 = s.lk + b / s.a;
  const double u2 = s.uk + b / s.a;

  const double f1s[2] = {l1, u1};
  const double f2s[2] = {l2, u2};
  double best = kInf;
  double bf1 = 0.0, bf2 = 0.0;
  for (double f1 : f1s) {
    for (double f2 : f2s) {
      const double p = corner_product(f1, f2);
      if (p < best) {
        best = p;
        bf1 = f1;
        bf2 = f2;
      }
    }
  }

  BilinEval out;
  out.value = best - b * c / s.a;
  if (!std::isfinite(best)) {
    out.db = 0.0;
    out.dc = 0.0;
    return out;
  }
  const double d_prod_db = std::isfinite(bf1) ? bf1 / s.a : 0.0;
  const double d_prod_dc = std::isfinite(bf2) ? bf2 : 0.0;
  out.db = d_prod_db - c / s.a;
  out.dc = d_prod_dc - b / s.a;
  return out;
}

}  // namespace

Psm build_psm(const QuadPoly& f, const ConstraintSystem& sys) {
  if (f.nvars() != sys.nvars() && sys.rows() > 0)
    throw DimensionError("build_psm: objective and system variable counts differ");
  const int n = f.nvars();

  Psm psm;
  psm.objective = f;
  psm.original = sys;
  BoxSplit split = extract_box(sys.rows() > 0
                                   ? sys
                                   : ConstraintSystem(Eigen::MatrixXd(0, n),
                                                      Eigen::VectorXd(0)));
  psm.box = split.box;
  psm.reduced = std::move(split.reduced);

  psm.layout.m_lambda = psm.reduced.rows();
  for (const auto& [key, coeff] : f.quad()) {
    if (coeff == 0.0) continue;
    if (key.first == key.second)
      psm.layout.shift_vars.push_back(key.first);
    else
      psm.layout.pair_vars.push_back(key);
  }
  const int P = psm.layout.size();
  const int m = psm.layout.m_lambda;

  psm.constant_part.w = Eigen::VectorXd::Zero(P);
  psm.constant_part.c0 = f.constant_term();
  for (int r = 0; r < m; ++r) psm.constant_part.w(r) = -psm.reduced.b(r);

  RowCollector rc(P);
  for (int r = 0; r < m; ++r)
    rc.add_unit(r, -1.0, 0.0, "multiplier " + std::to_string(r) + " >= 0");

  for (int j = 0; j < n; ++j) {
    AffineForm k;
    k.w = Eigen::VectorXd::Zero(P);
    k.c0 = f.coeff_linear(j);
    for (int r = 0; r < m; ++r) k.w(r) = psm.reduced.A(r, j);
    if (f.coeff_quad(j, j) != 0.0) k.w(psm.layout.shift_index(j)) -= 1.0;
    for (const auto& [i, kk] : psm.layout.pair_vars) {
      if (i == j) k.w(psm.layout.pair_index(i, kk, 0)) -= 1.0;
      if (kk == j) k.w(psm.layout.pair_index(i, kk, 1)) -= 1.0;
    }
    if (k.c0 == 0.0 && k.w.isZero(0.0)) continue;

    LinearSub sub;
    sub.var = j;
    sub.k = k;
    sub.lo = psm.box.lo(j);
    sub.hi = psm.box.hi(j);

    const bool blo = psm.box.bounded_below(j);
    const bool bhi = psm.box.bounded_above(j);
    if (!blo && bhi) {
      rc.add(k.w.transpose(), -k.c0, "coef(" + vtag(j) + ") <= 0");
    } else if (blo && !bhi) {
      rc.add((-k.w).transpose(), k.c0, "coef(" + vtag(j) + ") >= 0");
    } else if (!blo && !bhi) {
      rc.add(k.w.transpose(), -k.c0, "coef(" + vtag(j) + ") <= 0");
      rc.add((-k.w).transpose(), k.c0, "coef(" + vtag(j) + ") >= 0");
    }
    psm.linears.push_back(std::move(sub));
  }

  for (int jv : psm.layout.shift_vars) {
    QuadSub q;
    q.var = jv;
    q.a = f.coeff_quad(jv, jv);
    q.b_param = psm.layout.shift_index(jv);
    q.lo = psm.box.lo(jv);
    q.hi = psm.box.hi(jv);
    if (q.a < 0.0 && (!psm.box.bounded_below(jv) || !psm.box.bounded_above(jv))) {
      rc.add_contradiction("concave square on unbounded " + vtag(jv));
      psm.theta.contradictory = true;
    }
    psm.quads.push_back(q);
  }

  for (const auto& [i, kk] : psm.layout.pair_vars) {
    BilinSub s;
    s.vi = i;
    s.vk = kk;
    s.a = f.coeff_quad(i, kk);
    s.b_param = psm.layout.pair_index(i, kk, 0);
    s.c_param = psm.layout.pair_index(i, kk, 1);
    s.li = psm.box.lo(i);
    s.ui = psm.box.hi(i);
    s.lk = psm.box.lo(kk);
    s.uk = psm.box.hi(kk);

    const double e_lo = s.a > 0.0 ? s.li : s.ui;
    const double e_hi = s.a > 0.0 ? s.ui : s.li;
    const bool inf_l1 = !std::isfinite(e_lo);
    const bool inf_u1 = !std::isfinite(e_hi);
    const bool inf_l2 = !std::isfinite(s.lk);
    const bool inf_u2 = !std::isfinite(s.uk);
    const std::string tag = "(" + vtag(i) + ", " + vtag(kk) + ")";

    if (inf_l1 && inf_u2) {
      rc.add_contradiction("cross term " + tag + " diverges");
      psm.theta.contradictory = true;
    } else if (inf_l1) {
      rc.add_unit(s.b_param, 1.0 / s.a, -s.uk,
                  "upper factor bound of " + tag + " <= 0");
    } else if (inf_u2) {
      rc.add_unit(s.c_param, -1.0, s.a * e_lo,
                  "lower factor bound of " + tag + " >= 0");
    }
    if (inf_l2 && inf_u1) {
      rc.add_contradiction("cross term " + tag + " diverges");
      psm.theta.contradictory = true;
    } else if (inf_l2) {
      rc.add_unit(s.c_param, 1.0, -s.a * e_hi,
                  "upper factor bound of " + tag + " <= 0");
    } else if (inf_u1) {
      rc.add_unit(s.b_param, -1.0 / s.a, s.lk,
                  "lower factor bound of " + tag + " >= 0");
    }
    psm.bilins.push_back(s);
  }

  psm.theta.M.resize(static_cast<int>(rc.rows.size()), P);
  psm.theta.h.resize(static_cast<int>(rc.rows.size()));
  for (int r = 0; r < static_cast<int>(rc.rows.size()); ++r) {
    psm.theta.M.row(r) = rc.rows[r];
    psm.theta.h(r) = rc.rhs[r];
  }
  psm.theta.row_notes = std::move(rc.notes);
  return psm;
}

double eval_bound_raw(const Psm& psm, const Eigen::VectorXd& theta) {
  if (theta.size() != psm.dim())
    throw DimensionError("eval_bound_raw: parameter vector size mismatch");
  double total = psm.constant_part.eval(theta);
  double v, d;
  for (const auto& s : psm.linears) {
    linear_min(s.k.eval(theta), s.lo, s.hi, &v, &d);
    total += v;
  }
  for (const auto& s : psm.quads) {
    quad_min(s.a, theta(s.b_param), s.lo, s.hi, &v, &d);
    total += v;
  }
  for (const auto& s : psm.bilins)
    total += bilin_min(s, theta(s.b_param), theta(s.c_param)).value;
  return total;
}

double eval_bound(const Psm& psm, const Eigen::VectorXd& theta, double eps) {
  if (!psm.theta.contains(theta, eps)) return -kInf;
  return eval_bound_raw(psm, theta);
}

Eigen::VectorXd grad_bound(const Psm& psm, const Eigen::VectorXd& theta) {
  if (theta.size() != psm.dim())
    throw DimensionError("grad_bound: parameter vector size mismatch");
  Eigen::VectorXd g = psm.constant_part.w;
  double v, d;
  for (const auto& s : psm.linears) {
    linear_min(s.k.eval(theta), s.lo, s.hi, &v, &d);
    g += d * s.k.w;
  }
  for (const auto& s : psm.quads) {
    quad_min(s.a, theta(s.b_param), s.lo, s.hi, &v, &d);
    g(s.b_param) += d;
  }
  for (const auto& s : psm.bilins) {
    const BilinEval e = bilin_min(s, theta(s.b_param), theta(s.c_param));
    g(s.b_param) += e.db;
    g(s.c_param) += e.dc;
  }
  return g;
}

Eigen::VectorXd penalty_gradient(const Psm& psm, const Eigen::VectorXd& theta,
                                 int p) {
  if (p != 1 && p != 2) throw Error("penalty_gradient: p must be 1 or 2");
  if (psm.theta.rows() == 0) return Eigen::VectorXd::Zero(psm.dim());
  Eigen::VectorXd r = psm.theta.M * theta - psm.theta.h;
  for (int i = 0; i < r.size(); ++i) {
    if (r(i) <= 0.0)
      r(i) = 0.0;
    else if (p == 1)
      r(i) = 1.0;
  }
  return psm.theta.M.transpose() * r;
}

}  // namespace ustad
