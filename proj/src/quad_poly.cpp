#include "ustad/poly/quad_poly.hpp"

#include <cmath>
#include <sstream>

namespace ustad {

QuadPoly QuadPoly::constant(int nvars, double d) {
  QuadPoly p(nvars);
  p.constant_ = d;
  return p;
}

QuadPoly QuadPoly::variable(int nvars, int idx) {
  QuadPoly p(nvars);
  p.add_linear(idx, 1.0);
  return p;
}

double QuadPoly::coeff_quad(int i, int k) const {
  if (i > k) std::swap(i, k);
  auto it = quad_.find({i, k});
  return it == quad_.end() ? 0.0 : it->second;
}

void QuadPoly::add_linear(int i, double c) {
  if (i < 0 || i >= nvars_) throw DimensionError("QuadPoly: variable index out of range");
  linear_(i) += c;
}

void QuadPoly::add_quad(int i, int k, double c) {
  if (i < 0 || i >= nvars_ || k < 0 || k >= nvars_)
    throw DimensionError("QuadPoly: variable index out of range");
  if (i > k) std::swap(i, k);
  quad_[{i, k}] += c;
}

int QuadPoly::degree() const {
  for (const auto& [key, c] : quad_)
    if (std::abs(c) >= kEpsCoeff) return 2;
  for (int i = 0; i < nvars_; ++i)
    if (std::abs(linear_(i)) >= kEpsCoeff) return 1;
  return 0;
}

double QuadPoly::eval(const Eigen::VectorXd& v) const {
  if (v.size() != nvars_) throw DimensionError("QuadPoly::eval: wrong state size");
  double acc = constant_;
  acc += linear_.dot(v);
  for (const auto& [key, c] : quad_) acc += c * v(key.first) * v(key.second);
  return acc;
}

QuadPoly& QuadPoly::operator+=(const QuadPoly& rhs) {
  if (rhs.nvars_ != nvars_) throw DimensionError("QuadPoly: mixed variable tables");
  constant_ += rhs.constant_;
  linear_ += rhs.linear_;
  for (const auto& [key, c] : rhs.quad_) quad_[key] += c;
  return *this;
}

QuadPoly& QuadPoly::operator-=(const QuadPoly& rhs) {
  if (rhs.nvars_ != nvars_) throw DimensionError("QuadPoly: mixed variable tables");
  constant_ -= rhs.constant_;
  linear_ -= rhs.linear_;
  for (const auto& [key, c] : rhs.quad_) quad_[key] -= c;
  return *this;
}

QuadPoly& QuadPoly::operator*=(double s) {
  constant_ *= s;
  linear_ *= s;
  for (auto& [key, c] : quad_) c *= s;
  return *this;
}

void QuadPoly::prune() {
  for (auto it = quad_.begin(); it != quad_.end();)
    it = std::abs(it->second) < kEpsCoeff ? quad_.erase(it) : std::next(it);
  for (int i = 0; i < nvars_; ++i)
    if (std::abs(linear_(i)) < kEpsCoeff) linear_(i) = 0.0;
  if (std::abs(constant_) < kEpsCoeff) constant_ = 0.0;
}

namespace {

std::string var_name(int i, const VarTable* names) {
  if (names && i < names->size()) return names->name(i);
  return "v" + std::to_string(i);
}

std::string monomial_text(const std::vector<int>& vars, const VarTable* names) {
  if (vars.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < vars.size(); ++i) {
    // Render repeated variables as squares where possible.
    if (i + 1 < vars.size() && vars[i] == vars[i + 1]) {
      out += var_name(vars[i], names) + "^2";
      ++i;
    } else {
      out += var_name(vars[i], names);
    }
    if (i + 1 < vars.size()) out += "*";
  }
  return out;
}

void append_term(std::ostringstream& os, bool& first, double c, const std::string& mono) {
  if (std::abs(c) < kEpsCoeff) return;
  double mag = std::abs(c);
  os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
  first = false;
  if (mono == "1") {
    os << mag;
  } else {
    if (mag != 1.0) os << mag << "*";
    os << mono;
  }
}

}  // namespace

std::string QuadPoly::to_string(const VarTable* names) const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : quad_) {
    std::vector<int> mono = {key.first, key.second};
    append_term(os, first, c, monomial_text(mono, names));
  }
  for (int i = 0; i < nvars_; ++i)
    append_term(os, first, linear_(i), monomial_text({i}, names));
  append_term(os, first, constant_, "1");
  if (first) return "0";
  return os.str();
}

void PolyAccum::add_monomial(std::vector<int> vars_sorted, double coeff) {
  std::sort(vars_sorted.begin(), vars_sorted.end());
  terms_[std::move(vars_sorted)] += coeff;
}

void PolyAccum::add(const QuadPoly& p, double scale) {
  if (p.nvars() != nvars_) throw DimensionError("PolyAccum: mixed variable tables");
  if (p.constant_term() != 0.0) add_monomial({}, scale * p.constant_term());
  for (int i = 0; i < nvars_; ++i)
    if (p.coeff_linear(i) != 0.0) add_monomial({i}, scale * p.coeff_linear(i));
  for (const auto& [key, c] : p.quad())
    add_monomial({key.first, key.second}, scale * c);
}

void PolyAccum::add_product(const QuadPoly& p, const QuadPoly& q, double scale) {
  if (p.nvars() != nvars_ || q.nvars() != nvars_)
    throw DimensionError("PolyAccum: mixed variable tables");
  PolyAccum pa(nvars_), qa(nvars_);
  pa.add(p);
  qa.add(q);
  for (const auto& [pm, pc] : pa.terms_) {
    for (const auto& [qm, qc] : qa.terms_) {
      std::vector<int> mono = pm;
      mono.insert(mono.end(), qm.begin(), qm.end());
      add_monomial(std::move(mono), scale * pc * qc);
    }
  }
}

QuadPoly PolyAccum::to_quad(const VarTable* names) const {
  for (const auto& [mono, c] : terms_) {
    if (mono.size() > 2 && std::abs(c) >= kEpsCoeff)
      throw DegreeError("expansion exceeds degree 2 at monomial " +
                            monomial_text(mono, names),
                        static_cast<int>(mono.size()), monomial_text(mono, names));
  }
  QuadPoly out(nvars_);
  for (const auto& [mono, c] : terms_) {
    if (std::abs(c) < kEpsCoeff) continue;
    switch (mono.size()) {
      case 0: out.add_constant(c); break;
      case 1: out.add_linear(mono[0], c); break;
      default: out.add_quad(mono[0], mono[1], c); break;
    }
  }
  out.prune();
  return out;
}

QuadPoly mul_checked(const QuadPoly& p, const QuadPoly& q, const VarTable* names) {
  PolyAccum acc(p.nvars());
  acc.add_product(p, q);
  return acc.to_quad(names);
}

}  // namespace ustad
