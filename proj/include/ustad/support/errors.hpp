#pragma once

#include <stdexcept>
#include <string>

namespace ustad {

// Base class of all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands disagree on variable count or row dimensions.
struct DimensionError : Error {
  using Error::Error;
};

// Polynomial expansion exceeded degree 2. `instruction` is the 1-based index
// of the assignment that overflowed when raised during a sequence fold, else 0.
struct DegreeError : Error {
  DegreeError(const std::string& what, int degree_, std::string monomial_,
              int instruction_ = 0)
      : Error(what), degree(degree_), monomial(std::move(monomial_)),
        instruction(instruction_) {}
  int degree;
  std::string monomial;
  int instruction;
};

// Contradictory single-variable bounds, or an empty feasible region where a
// nonempty one is required.
struct InfeasibleError : Error {
  using Error::Error;
};

// Source location for text-format failures (programs, polynomials, problems).
struct ParseError : Error {
  ParseError(const std::string& what, int line_, int col_)
      : Error(what), line(line_), col(col_) {}
  int line;
  int col;
};

}  // namespace ustad
