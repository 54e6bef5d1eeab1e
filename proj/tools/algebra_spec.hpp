#pragma once

// Text format for commutative associative algebras:
//
//   # comment
//   basis 1 a b
//   unit 1
//   mul a a = 1
//   mul a b = 2*b - 1/2*1
//
// `basis` comes first. Products with the unit may be omitted, and `mul i j` also
// defines `mul j i` unless that is given too. A right-hand side is a signed sum of
// terms `c*name` or `name`, or `0`. Coefficients are integers or fractions p/q.

#include "voacheck/voa.hpp"

#include <stdexcept>
#include <string>

namespace voacheck::cli {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

/// Parses and validates. Throws ParseError on syntax errors and SpecError naming the
/// violated axiom and witness on semantic ones.
CommAssocSpec parse_algebra_text(const std::string& text);
CommAssocSpec parse_algebra_spec(const std::string& path);

}  // namespace voacheck::cli
