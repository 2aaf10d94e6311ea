#include "ustad/support/problem.hpp"

#include <sstream>
#include <vector>

#include "ustad/poly/parse.hpp"
#include "ustad/support/lexer.hpp"

namespace ustad {
namespace {

// Relocates single-line parse errors to the file line they came from.
[[noreturn]] void refail(const ParseError& e, int line) {
  throw ParseError(std::string(e.what()), line, e.col);
}

}  // namespace

Problem parse_problem(const std::string& source) {
  Problem prob;
  std::istringstream in(source);
  std::string line;
  int lineno = 0;
  enum class Section { preamble, constraints } section = Section::preamble;
  bool have_vars = false, have_objective = false;

  while (std::getline(in, line)) {
    ++lineno;
    TokenStream ts(line);
    if (ts.at_end()) continue;

    try {
      if (section == Section::preamble) {
        if (ts.accept_ident("vars")) {
          ts.expect(":");
          while (ts.peek().kind == Token::Kind::ident) {
            const Token& t = ts.get();
            if (prob.vars.find(t.text) >= 0)
              throw ParseError("variable '" + t.text + "' listed twice",
                               t.line, t.col);
            prob.vars.add(t.text);
          }
          if (!ts.at_end())
            TokenStream::fail("expected variable names", ts.peek());
          have_vars = true;
          continue;
        }
        if (ts.accept_ident("minimize")) {
          ts.expect(":");
          if (!have_vars)
            throw ParseError("vars: must precede minimize:", 1, 1);
          prob.objective = parse_poly_tokens(ts, prob.vars, false);
          if (!ts.at_end())
            TokenStream::fail("trailing input after objective", ts.peek());
          have_objective = true;
          continue;
        }
        if (ts.accept_ident("subject")) {
          if (!ts.accept_ident("to"))
            TokenStream::fail("expected 'subject to:'", ts.peek());
          ts.expect(":");
          if (!have_vars || !have_objective)
            throw ParseError("vars: and minimize: must precede subject to:",
                             1, 1);
          prob.sys.A.resize(0, prob.vars.size());
          prob.sys.b.resize(0);
          section = Section::constraints;
          continue;
        }
        TokenStream::fail("expected 'vars:', 'minimize:' or 'subject to:'",
                          ts.peek());
      }

      // Constraint line: poly relop poly.
      QuadPoly lhs = parse_poly_tokens(ts, prob.vars, false);
      const Token& op = ts.peek();
      if (op.kind != Token::Kind::punct ||
          (op.text != "<=" && op.text != ">=" && op.text != "<" &&
           op.text != ">" && op.text != "=="))
        TokenStream::fail("expected a comparison operator", op);
      const std::string rel = ts.get().text;
      QuadPoly rhs = parse_poly_tokens(ts, prob.vars, false);
      if (!ts.at_end())
        TokenStream::fail("trailing input after constraint", ts.peek());
      QuadPoly d = lhs - rhs;
      if (d.degree() > 1)
        throw ParseError("constraints must be linear", 1, op.col);
      const Eigen::RowVectorXd w = d.linear().transpose();
      const double c0 = d.constant_term();
      if (rel == "<=" || rel == "<" || rel == "==")
        prob.sys.append_row(w, -c0);
      if (rel == ">=" || rel == ">" || rel == "==")
        prob.sys.append_row(-w, c0);
    } catch (const ParseError& e) {
      refail(e, lineno);
    }
  }

  if (!have_vars || !have_objective)
    throw ParseError("problem needs vars: and minimize: sections", lineno, 1);
  if (section != Section::constraints) {
    prob.sys.A.resize(0, prob.vars.size());
    prob.sys.b.resize(0);
  }
  return prob;
}

}  // namespace ustad
