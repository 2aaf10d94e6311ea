#include "ustad/core/constraint_system.hpp"
#include "ustad/core/element.hpp"
#include "ustad/core/template_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ustad {

void ConstraintSystem::append_row(const Eigen::RowVectorXd& a, double rhs) {
  if (rows() == 0 && A.cols() == 0) A.resize(0, a.size());
  if (a.size() != A.cols())
    throw DimensionError("ConstraintSystem::append_row: width mismatch");
  A.conservativeResize(A.rows() + 1, Eigen::NoChange);
  A.row(A.rows() - 1) = a;
  b.conservativeResize(b.size() + 1);
  b(b.size() - 1) = rhs;
}

void ConstraintSystem::append(const ConstraintSystem& other) {
  if (other.rows() == 0) return;
  if (rows() == 0 && A.cols() == 0) A.resize(0, other.A.cols());
  if (other.A.cols() != A.cols())
    throw DimensionError("ConstraintSystem::append: width mismatch");
  const auto old = A.rows();
  A.conservativeResize(old + other.A.rows(), Eigen::NoChange);
  A.bottomRows(other.A.rows()) = other.A;
  b.conservativeResize(old + other.b.size());
  b.tail(other.b.size()) = other.b;
}

BoxSplit extract_box(const ConstraintSystem& sys) {
  const int n = sys.nvars();
  BoxSplit out;
  out.box = Box(n);

  std::vector<int> kept;
  for (int r = 0; r < sys.rows(); ++r) {
    int nz = -1;
    int count = 0;
    for (int j = 0; j < n; ++j) {
      if (sys.A(r, j) != 0.0) {
        nz = j;
        ++count;
        if (count > 1) break;
      }
    }
    if (count == 1) {
      const double a = sys.A(r, nz);
      const double q = sys.b(r) / a;
      if (a > 0.0) {
        out.box.hi(nz) = std::min(out.box.hi(nz), q);
      } else {
        out.box.lo(nz) = std::max(out.box.lo(nz), q);
      }
    } else {
      kept.push_back(r);
    }
  }

  for (int j = 0; j < n; ++j) {
    if (out.box.lo(j) > out.box.hi(j))
      throw InfeasibleError("contradictory interval bounds on variable " +
                            std::to_string(j));
  }

  out.reduced.A.resize(static_cast<int>(kept.size()), n);
  out.reduced.b.resize(static_cast<int>(kept.size()));
  for (int i = 0; i < static_cast<int>(kept.size()); ++i) {
    out.reduced.A.row(i) = sys.A.row(kept[i]);
    out.reduced.b(i) = sys.b(kept[i]);
  }
  out.kept_rows = std::move(kept);
  return out;
}

Template make_template(TemplateKind kind, int nvars) {
  Template tpl;
  tpl.kind = kind;

  std::vector<Eigen::RowVectorXd> rows;
  auto unit = [&](int i, double s) {
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(nvars);
    r(i) = s;
    return r;
  };

  for (int i = 0; i < nvars; ++i) {
    rows.push_back(unit(i, 1.0));
    rows.push_back(unit(i, -1.0));
  }

  if (kind == TemplateKind::octagon) {
    for (int i = 0; i < nvars; ++i) {
      for (int j = i + 1; j < nvars; ++j) {
        for (auto [si, sj] : {std::pair{1.0, 1.0},
                              std::pair{1.0, -1.0},
                              std::pair{-1.0, 1.0},
                              std::pair{-1.0, -1.0}}) {
          Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(nvars);
          r(i) = si;
          r(j) = sj;
          rows.push_back(r);
        }
      }
    }
  } else if (kind == TemplateKind::zones) {
    for (int i = 0; i < nvars; ++i) {
      for (int j = 0; j < nvars; ++j) {
        if (i == j) continue;
        Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(nvars);
        r(i) = 1.0;
        r(j) = -1.0;
        rows.push_back(r);
      }
    }
  }

  tpl.T.resize(static_cast<int>(rows.size()), nvars);
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) tpl.T.row(i) = rows[i];
  return tpl;
}

TemplateKind template_kind_from_name(const std::string& name) {
  if (name == "interval") return TemplateKind::interval;
  if (name == "zones") return TemplateKind::zones;
  if (name == "octagon") return TemplateKind::octagon;
  throw Error("unknown template kind: " + name);
}

std::string template_kind_name(TemplateKind kind) {
  switch (kind) {
    case TemplateKind::interval: return "interval";
    case TemplateKind::zones: return "zones";
    case TemplateKind::octagon: return "octagon";
  }
  return "?";
}

std::string row_expression(const Template& tpl, int row, const VarTable& vars) {
  std::string out;
  for (int j = 0; j < tpl.nvars(); ++j) {
    const double w = tpl.T(row, j);
    if (w == 0.0) continue;
    if (out.empty()) {
      if (w < 0.0) out += "-";
    } else {
      out += (w < 0.0) ? " - " : " + ";
    }
    const double mag = std::abs(w);
    if (mag != 1.0) out += std::to_string(mag) + "*";
    out += vars.name(j);
  }
  if (out.empty()) out = "0";
  return out;
}

AbstractElement top_element(const Template& tpl) {
  AbstractElement e;
  e.c = Eigen::VectorXd::Constant(tpl.rows(), -kInf);
  return e;
}

bool has_finite_row(const AbstractElement& e) {
  for (int i = 0; i < e.rows(); ++i)
    if (e.c(i) > -kInf) return true;
  return false;
}

ConstraintSystem element_to_constraints(const Template& tpl,
                                        const AbstractElement& e) {
  if (e.rows() != tpl.rows())
    throw DimensionError("element_to_constraints: row count mismatch");
  std::vector<int> live;
  for (int i = 0; i < e.rows(); ++i)
    if (e.c(i) > -kInf) live.push_back(i);

  ConstraintSystem sys;
  sys.A.resize(static_cast<int>(live.size()), tpl.nvars());
  sys.b.resize(static_cast<int>(live.size()));
  for (int k = 0; k < static_cast<int>(live.size()); ++k) {
    sys.A.row(k) = -tpl.T.row(live[k]);
    sys.b(k) = -e.c(live[k]);
  }
  return sys;
}

bool contains_point(const Template& tpl, const AbstractElement& e,
                    const Eigen::VectorXd& v, double eps) {
  if (v.size() != tpl.nvars())
    throw DimensionError("contains_point: dimension mismatch");
  for (int i = 0; i < e.rows(); ++i) {
    if (e.c(i) <= -kInf) continue;
    if (tpl.T.row(i).dot(v) < e.c(i) - eps) return false;
  }
  return true;
}

AbstractElement join(const AbstractElement& a, const AbstractElement& b) {
  if (a.rows() != b.rows()) throw DimensionError("join: row count mismatch");
  AbstractElement out;
  out.c = a.c.cwiseMin(b.c);
  return out;
}

ElementDelta compare_elements(const AbstractElement& reference,
                              const AbstractElement& candidate, double tol) {
  if (reference.rows() != candidate.rows())
    throw DimensionError("compare_elements: row count mismatch");
  ElementDelta d;
  bool any_worse = false;
  for (int i = 0; i < reference.rows(); ++i) {
    const double r = reference.c(i);
    const double c = candidate.c(i);
    if (r == c) continue;  // covers both -inf
    const bool r_inf = (r <= -kInf);
    const bool c_inf = (c <= -kInf);
    if (r_inf && !c_inf) {
      ++d.improved;
    } else if (!r_inf && c_inf) {
      ++d.worsened;
      any_worse = true;
    } else {
      if (c > r + tol) {
        ++d.improved;
      } else if (c < r - tol) {
        ++d.worsened;
        any_worse = true;
      }
    }
  }
  d.dominates = !any_worse;
  d.strengthened = d.dominates && d.improved > 0;
  return d;
}

}  // namespace ustad
