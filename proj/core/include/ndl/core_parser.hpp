#pragma once

// Text format, one rule per line:
//
//   f p1 ... pn = expr
//
// Constructors are capitalized, functions and variables lowercase. `?` is
// right-associative infix choice, `fail` is failure, `let x = e in e` binds,
// decimal literals abbreviate S (S ... Z), and `--` starts a comment.
// Patterns must be linear and constructor-rooted.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ndl/core_syntax.hpp"

namespace ndl::core {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// Parses and validates a program. Throws ParseError on syntax errors,
/// unbound identifiers, arity mismatches and non-linear patterns.
Program parse_program(std::string_view text);

/// Parses a closed expression whose functions and constructors are
/// resolved against `program`.
ExprPtr parse_expression(const Program& program, std::string_view text);

}  // namespace ndl::core
