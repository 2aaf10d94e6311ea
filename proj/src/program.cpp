#include "ustad/interp/program.hpp"

#include <optional>

#include "ustad/poly/parse.hpp"
#include "ustad/support/lexer.hpp"

namespace ustad {
namespace {

class ProgramParser {
 public:
  explicit ProgramParser(const std::string& src) : ts_(src) {}

  Program parse() {
    cur_ = new_block();
    while (ts_.peek().kind == Token::Kind::ident && ts_.peek().text == "var")
      declaration();
    while (!ts_.at_end()) statement();
    prog_.blocks[cur_].term = BasicBlock::Term::exit;
    return std::move(prog_);
  }

 private:
  int new_block() {
    prog_.blocks.emplace_back();
    return static_cast<int>(prog_.blocks.size()) - 1;
  }

  void declaration() {
    ts_.get();  // var
    do {
      const Token& t = ts_.peek();
      if (t.kind != Token::Kind::ident)
        TokenStream::fail("expected a variable name", t);
      if (prog_.vars.find(t.text) >= 0)
        throw ParseError("variable '" + t.text + "' declared twice", t.line,
                         t.col);
      prog_.vars.add(t.text);
      ts_.get();
    } while (ts_.accept(","));
    ts_.expect(";");
  }

  QuadPoly poly() { return parse_poly_tokens(ts_, prog_.vars, false); }

  // relation := poly (<=|>=|<|>|==) poly, with optional outer parentheses.
  LinearCond condition() {
    const size_t m = ts_.mark();
    if (ts_.accept("(")) {
      try {
        LinearCond inner = condition();
        ts_.expect(")");
        return inner;
      } catch (const ParseError&) {
        ts_.reset(m);
      }
    }
    const Token& at = ts_.peek();
    QuadPoly lhs = poly();
    const Token& op = ts_.peek();
    if (op.kind != Token::Kind::punct ||
        (op.text != "<=" && op.text != ">=" && op.text != "<" &&
         op.text != ">" && op.text != "=="))
      TokenStream::fail("expected a comparison operator", op);
    ts_.get();
    QuadPoly rhs = poly();
    if (lhs.degree() > 1 || rhs.degree() > 1)
      throw ParseError("conditions must be linear", at.line, at.col);

    QuadPoly d = lhs - rhs;  // compare d against 0
    const int n = prog_.vars.size();
    Eigen::RowVectorXd w = d.linear().transpose();
    const double c0 = d.constant_term();

    LinearCond cond;
    cond.when_true.A.resize(0, n);
    cond.when_false.A.resize(0, n);
    const bool leq = op.text == "<=" || op.text == "<";
    const bool geq = op.text == ">=" || op.text == ">";
    if (leq || op.text == "==") cond.when_true.append_row(w, -c0);
    if (geq || op.text == "==") cond.when_true.append_row(-w, c0);
    if (leq) cond.when_false.append_row(-w, c0);
    if (geq) cond.when_false.append_row(w, -c0);
    cond.text = lhs.to_string(&prog_.vars) + " " + op.text + " " +
                rhs.to_string(&prog_.vars);
    return cond;
  }

  int var_ref() {
    const Token& t = ts_.peek();
    if (t.kind != Token::Kind::ident)
      TokenStream::fail("expected a variable name", t);
    const int idx = prog_.vars.find(t.text);
    if (idx < 0)
      throw ParseError("unknown variable '" + t.text + "'", t.line, t.col);
    ts_.get();
    return idx;
  }

  void braced_body() {
    ts_.expect("{");
    while (!ts_.at_end() && !(ts_.peek().kind == Token::Kind::punct &&
                              ts_.peek().text == "}"))
      statement();
    ts_.expect("}");
  }

  void statement() {
    const Token& t = ts_.peek();
    if (t.kind == Token::Kind::ident && t.text == "var")
      throw ParseError("variable declarations must precede statements", t.line,
                       t.col);

    if (ts_.accept_ident("while")) {
      ts_.expect("(");
      LinearCond c = condition();
      ts_.expect(")");
      const int head = new_block();
      prog_.blocks[cur_].term = BasicBlock::Term::jump;
      prog_.blocks[cur_].next = head;
      const int body = new_block();
      prog_.blocks[head].term = BasicBlock::Term::branch;
      prog_.blocks[head].cond = c;
      prog_.blocks[head].next = body;
      cur_ = body;
      braced_body();
      prog_.blocks[cur_].term = BasicBlock::Term::jump;
      prog_.blocks[cur_].next = head;
      const int after = new_block();
      prog_.blocks[head].false_next = after;
      cur_ = after;
      return;
    }
    if (ts_.accept_ident("if")) {
      ts_.expect("(");
      LinearCond c = condition();
      ts_.expect(")");
      const int branch_block = cur_;
      const int then_start = new_block();
      prog_.blocks[branch_block].term = BasicBlock::Term::branch;
      prog_.blocks[branch_block].cond = c;
      prog_.blocks[branch_block].next = then_start;
      cur_ = then_start;
      braced_body();
      const int then_end = cur_;
      if (ts_.accept_ident("else")) {
        const int else_start = new_block();
        prog_.blocks[branch_block].false_next = else_start;
        cur_ = else_start;
        braced_body();
        const int else_end = cur_;
        const int after = new_block();
        prog_.blocks[then_end].term = BasicBlock::Term::jump;
        prog_.blocks[then_end].next = after;
        prog_.blocks[else_end].term = BasicBlock::Term::jump;
        prog_.blocks[else_end].next = after;
        cur_ = after;
      } else {
        const int after = new_block();
        prog_.blocks[branch_block].false_next = after;
        prog_.blocks[then_end].term = BasicBlock::Term::jump;
        prog_.blocks[then_end].next = after;
        cur_ = after;
      }
      return;
    }
    if (ts_.accept_ident("assume")) {
      InstrAssume a;
      a.cond = condition();
      ts_.expect(";");
      prog_.blocks[cur_].instrs.push_back(std::move(a));
      return;
    }
    if (ts_.accept_ident("assert")) {
      InstrAssert a;
      a.line = ts_.peek().line;
      a.cond = condition();
      ts_.expect(";");
      prog_.blocks[cur_].instrs.push_back(std::move(a));
      return;
    }
    if (ts_.accept_ident("havoc")) {
      InstrHavoc h;
      h.var = var_ref();
      ts_.expect(";");
      prog_.blocks[cur_].instrs.push_back(h);
      return;
    }

    // Assignment: ident (:= | =) poly ;
    InstrAssign a;
    a.var = var_ref();
    if (!ts_.accept(":=") && !ts_.accept("="))
      TokenStream::fail("expected ':=' in assignment", ts_.peek());
    a.rhs = poly();
    ts_.expect(";");
    a.text = prog_.vars.name(a.var) + " := " + a.rhs.to_string(&prog_.vars);
    prog_.blocks[cur_].instrs.push_back(std::move(a));
  }

  TokenStream ts_;
  Program prog_;
  int cur_ = 0;
};

}  // namespace

Program parse_program(const std::string& source) {
  ProgramParser p(source);
  return p.parse();
}

}  // namespace ustad
