#pragma once

#include <Eigen/Dense>
#include <string>

#include "ustad/support/var_table.hpp"

namespace ustad {

enum class TemplateKind { interval, zones, octagon };

// Fixed row matrix T of a template domain {v | T v >= c}.
// Row order is canonical:
//   interval: +v_0, -v_0, +v_1, -v_1, ...
//   octagon:  interval rows, then per pair i<j the four rows
//             (v_i+v_j), (v_i-v_j), (-v_i+v_j), (-v_i-v_j)
//   zones:    interval rows, then per ordered pair i != j the row (v_i-v_j),
//             pairs sorted lexicographically
struct Template {
  TemplateKind kind;
  Eigen::MatrixXd T;  // t x n

  int rows() const { return static_cast<int>(T.rows()); }
  int nvars() const { return static_cast<int>(T.cols()); }
};

Template make_template(TemplateKind kind, int nvars);

TemplateKind template_kind_from_name(const std::string& name);
std::string template_kind_name(TemplateKind kind);

// Human-readable rendering of row i, e.g. "x - y" or "-x".
std::string row_expression(const Template& tpl, int row, const VarTable& vars);

}  // namespace ustad
