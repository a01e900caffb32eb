#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lieweight/chart.hpp"
#include "lieweight/ratfunc.hpp"
#include "lieweight/vector_field.hpp"

namespace lieweight {

/// Syntax or name-resolution error with a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

// Grammar (ASCII):
//   expr     := term { ("+" | "-") term }
//   term     := factor { "*" factor }
//   factor   := "-" factor | atom [ "^" nat ]
//   atom     := rational | ident | "d" ident | "(" expr ")"
//   rational := nat [ "/" nat ]
// An identifier that is not a chart variable but is "d" followed by one names
// the coordinate field. Unary minus binds looser than "^", so "-x^2" is
// -(x^2). The rational variants additionally accept "/" between factors.

Poly parse_poly(std::string_view src, const Chart& chart);
/// Every term must carry exactly one "d<var>" factor.
VectorField parse_vf(std::string_view src, const Chart& chart);
RatFunc parse_ratfunc(std::string_view src, const Chart& chart);
VectorField parse_vf_rational(std::string_view src, const Chart& chart);

/// Printers; the output re-parses to the same value with the matching
/// parser (parse_poly / parse_vf for polynomial data, the rational variants
/// otherwise).
std::string to_string(const Poly& p, const Chart& chart);
std::string to_string(const RatFunc& f, const Chart& chart);
std::string to_string(const VectorField& v, const Chart& chart);

}  // namespace lieweight
