#include "ustad/poly/parse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

namespace ustad {
namespace {

// Unbounded-degree polynomial used only while an expression is being folded.
// Keys are sorted variable-index multisets; the empty key is the constant.
struct MPoly {
  std::map<std::vector<int>, double> terms;

  static MPoly number(double d) {
    MPoly p;
    p.terms[{}] = d;
    return p;
  }
  static MPoly var(int idx) {
    MPoly p;
    p.terms[{idx}] = 1.0;
    return p;
  }

  void add(const MPoly& o, double scale) {
    for (const auto& [k, c] : o.terms) terms[k] += scale * c;
  }

  MPoly mul(const MPoly& o) const {
    MPoly out;
    for (const auto& [ka, ca] : terms) {
      for (const auto& [kb, cb] : o.terms) {
        std::vector<int> key = ka;
        key.insert(key.end(), kb.begin(), kb.end());
        std::sort(key.begin(), key.end());
        out.terms[std::move(key)] += ca * cb;
      }
    }
    return out;
  }

  MPoly pow(int e) const {
    MPoly out = number(1.0);
    for (int k = 0; k < e; ++k) out = out.mul(*this);
    return out;
  }
};

class PolyParser {
 public:
  PolyParser(TokenStream& ts, VarTable& vars, bool allow_new)
      : ts_(ts), vars_(vars), allow_new_(allow_new) {}

  MPoly parse_expr() {
    MPoly acc;
    bool lead_minus = false;
    if (ts_.accept("-"))
      lead_minus = true;
    else
      ts_.accept("+");
    acc.add(parse_term(), lead_minus ? -1.0 : 1.0);
    for (;;) {
      if (ts_.accept("+")) {
        acc.add(parse_term(), 1.0);
      } else if (ts_.accept("-")) {
        acc.add(parse_term(), -1.0);
      } else {
        break;
      }
    }
    return acc;
  }

 private:
  MPoly parse_term() {
    MPoly acc = parse_factor();
    while (ts_.accept("*")) acc = acc.mul(parse_factor());
    return acc;
  }

  MPoly parse_factor() {
    double sign = 1.0;
    for (;;) {
      if (ts_.accept("-")) {
        sign = -sign;
      } else if (!ts_.accept("+")) {
        break;
      }
    }
    MPoly base = parse_atom();
    if (ts_.accept("^")) {
      const Token& e = ts_.peek();
      if (e.kind != Token::Kind::number || e.num != std::floor(e.num) ||
          e.num < 0.0)
        TokenStream::fail("expected a nonnegative integer exponent", e);
      ts_.get();
      base = base.pow(static_cast<int>(e.num));
    }
    if (sign < 0.0) {
      MPoly neg;
      neg.add(base, -1.0);
      return neg;
    }
    return base;
  }

  MPoly parse_atom() {
    const Token& t = ts_.peek();
    if (t.kind == Token::Kind::number) {
      ts_.get();
      return MPoly::number(t.num);
    }
    if (t.kind == Token::Kind::ident) {
      ts_.get();
      int idx = vars_.find(t.text);
      if (idx < 0) {
        if (!allow_new_)
          throw ParseError("unknown variable '" + t.text + "'", t.line, t.col);
        idx = vars_.add(t.text);
      }
      return MPoly::var(idx);
    }
    if (t.kind == Token::Kind::punct && t.text == "(") {
      ts_.get();
      MPoly inner = parse_expr();
      ts_.expect(")");
      return inner;
    }
    TokenStream::fail("expected a number, variable or '('", t);
  }

  TokenStream& ts_;
  VarTable& vars_;
  bool allow_new_;
};

}  // namespace

QuadPoly parse_poly_tokens(TokenStream& ts, VarTable& vars, bool allow_new) {
  PolyParser parser(ts, vars, allow_new);
  MPoly m = parser.parse_expr();

  // DegreeError from the collection escapes as-is; callers attach context.
  PolyAccum acc(vars.size());
  for (const auto& [key, coeff] : m.terms) acc.add_monomial(key, coeff);
  return acc.to_quad(&vars);
}

QuadPoly parse_poly(const std::string& text, VarTable& vars, bool allow_new) {
  TokenStream ts(text);
  QuadPoly p = parse_poly_tokens(ts, vars, allow_new);
  if (!ts.at_end())
    TokenStream::fail("trailing input after expression", ts.peek());
  return p;
}

}  // namespace ustad
