#pragma once

#include <cmath>
#include <string>

#include "ustad/support/errors.hpp"
#include "ustad/support/numeric.hpp"

namespace ustad {

// Scalar over [-inf, +inf]. Arithmetic never produces NaN: the indeterminate
// inf - inf is rejected loudly, and the 0 * inf needed by interval corner
// products is only available through the named corner_product below, where the
// zero factor is exact and the convention 0 * inf = 0 is the attained value.
class ExtScalar {
 public:
  ExtScalar() : v_(0.0) {}
  ExtScalar(double v) : v_(v) {
    if (std::isnan(v)) throw Error("ExtScalar: NaN is not a value");
  }

  static ExtScalar neg_inf() { return ExtScalar(-kInf); }
  static ExtScalar pos_inf() { return ExtScalar(kInf); }

  double value() const { return v_; }
  bool finite() const { return std::isfinite(v_); }

  ExtScalar operator-() const { return ExtScalar(-v_); }

  friend ExtScalar operator+(ExtScalar a, ExtScalar b) {
    if (a.v_ == kInf && b.v_ == -kInf) reject("inf + -inf");
    if (a.v_ == -kInf && b.v_ == kInf) reject("-inf + inf");
    return ExtScalar(a.v_ + b.v_);
  }
  friend ExtScalar operator-(ExtScalar a, ExtScalar b) { return a + (-b); }
  friend ExtScalar operator*(ExtScalar a, ExtScalar b) {
    if ((a.v_ == 0.0 && !b.finite()) || (b.v_ == 0.0 && !a.finite()))
      reject("0 * inf outside corner products");
    return ExtScalar(a.v_ * b.v_);
  }

  friend bool operator<(ExtScalar a, ExtScalar b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtScalar a, ExtScalar b) { return a.v_ <= b.v_; }
  friend bool operator==(ExtScalar a, ExtScalar b) { return a.v_ == b.v_; }

 private:
  [[noreturn]] static void reject(const char* op) {
    throw Error(std::string("ExtScalar: rejected operation ") + op);
  }
  double v_;
};

// Product of two interval endpoints for a minimum over a box: an exact zero
// factor pins the attainable product at zero regardless of the other endpoint.
inline double corner_product(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

}  // namespace ustad
