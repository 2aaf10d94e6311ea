#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ustad/support/errors.hpp"
#include "ustad/support/numeric.hpp"
#include "ustad/support/var_table.hpp"

namespace ustad {

// Polynomial of total degree <= 2 over a fixed variable table, stored in
// collected canonical form: quadratic coefficients keyed by (i, k) with
// i <= k ((i, i) are squares), a dense linear part and a constant. Terms with
// |coefficient| < kEpsCoeff are dropped on collection.
class QuadPoly {
 public:
  using QuadKey = std::pair<int, int>;

  explicit QuadPoly(int nvars = 0)
      : nvars_(nvars), linear_(Eigen::VectorXd::Zero(nvars)), constant_(0.0) {}

  static QuadPoly constant(int nvars, double d);
  static QuadPoly variable(int nvars, int idx);

  int nvars() const { return nvars_; }
  double constant_term() const { return constant_; }
  const Eigen::VectorXd& linear() const { return linear_; }
  const std::map<QuadKey, double>& quad() const { return quad_; }

  double coeff_linear(int i) const { return linear_(i); }
  double coeff_quad(int i, int k) const;

  void add_constant(double d) { constant_ += d; }
  void add_linear(int i, double c);
  void add_quad(int i, int k, double c);  // accepts any order of i, k

  // Highest total degree with a surviving coefficient: 0, 1 or 2.
  int degree() const;

  double eval(const Eigen::VectorXd& v) const;

  QuadPoly& operator+=(const QuadPoly& rhs);
  QuadPoly& operator-=(const QuadPoly& rhs);
  QuadPoly& operator*=(double s);

  friend QuadPoly operator+(QuadPoly a, const QuadPoly& b) { return a += b; }
  friend QuadPoly operator-(QuadPoly a, const QuadPoly& b) { return a -= b; }
  friend QuadPoly operator*(QuadPoly a, double s) { return a *= s; }
  friend QuadPoly operator*(double s, QuadPoly a) { return a *= s; }

  // Drops collected terms below kEpsCoeff.
  void prune();

  std::string to_string(const VarTable* names = nullptr) const;

 private:
  int nvars_;
  std::map<QuadKey, double> quad_;
  Eigen::VectorXd linear_;
  double constant_;
};

// Multi-degree accumulator used while expanding products and substitutions.
// Collection happens here; conversion back to QuadPoly enforces the degree cap
// and names the first offending monomial.
class PolyAccum {
 public:
  explicit PolyAccum(int nvars) : nvars_(nvars) {}

  void add(const QuadPoly& p, double scale = 1.0);
  void add_product(const QuadPoly& p, const QuadPoly& q, double scale = 1.0);
  void add_monomial(std::vector<int> vars_sorted, double coeff);

  // Throws DegreeError when a collected monomial of degree >= 3 survives.
  QuadPoly to_quad(const VarTable* names = nullptr) const;

 private:
  int nvars_;
  std::map<std::vector<int>, double> terms_;
};

// Degree-checked product of two polynomials.
QuadPoly mul_checked(const QuadPoly& p, const QuadPoly& q,
                     const VarTable* names = nullptr);

}  // namespace ustad
