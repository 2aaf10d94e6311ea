#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ustad/core/constraint_system.hpp"
#include "ustad/eum/update_map.hpp"

namespace ustad {

// Linear condition, stored as closed constraint rows for both branch
// directions. Strict comparisons are relaxed to their closures, so the rows
// over-approximate the concrete branch; `==` negates to no information.
struct LinearCond {
  ConstraintSystem when_true;
  ConstraintSystem when_false;
  std::string text;
};

struct InstrAssign {
  int var = -1;
  QuadPoly rhs;
  std::string text;
};
struct InstrAssume {
  LinearCond cond;
};
struct InstrAssert {
  LinearCond cond;
  int line = 0;
};
struct InstrHavoc {
  int var = -1;
};

using Instr = std::variant<InstrAssign, InstrAssume, InstrAssert, InstrHavoc>;

struct BasicBlock {
  enum class Term { jump, branch, exit };
  std::vector<Instr> instrs;
  Term term = Term::exit;
  int next = -1;        // jump target, or branch target when the condition holds
  int false_next = -1;  // branch target when the condition fails
  LinearCond cond;      // branch only
};

struct Program {
  VarTable vars;
  std::vector<BasicBlock> blocks;
  int entry = 0;

  int nvars() const { return vars.size(); }
  int nblocks() const { return static_cast<int>(blocks.size()); }
};

// Text format:
//   var x, y;
//   x := 1; y := x*x - 2;
//   while (x <= 10) { ... }
//   if (x >= y) { ... } else { ... }
//   assume x + y <= 5; assert x <= 10; havoc x;
// `=` is accepted for `:=`; comments run from `//` or `#` to end of line.
Program parse_program(const std::string& source);

}  // namespace ustad
