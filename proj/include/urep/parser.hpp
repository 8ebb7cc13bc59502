#pragma once

// Polynomial input grammar:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' INTEGER)?
//   primary := INTEGER | VARIABLE | '(' expr ')'
//
// `^` binds tightest, so -x^2 is -(x^2). Canonical polynomial text and the
// closed-form expressions emitted for large polynomials are both in this
// grammar.

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "urep/expr.hpp"
#include "urep/polynomial.hpp"

namespace urep {

class ParseError : public std::runtime_error {
public:
    enum class Kind { syntax, unknown_variable, non_integer_exponent };

    ParseError(Kind kind, std::size_t position, const std::string& message);

    Kind kind() const noexcept { return kind_; }
    std::size_t position() const noexcept { return position_; }

private:
    Kind kind_;
    std::size_t position_;
};

using VariablePredicate = std::function<bool(std::string_view)>;

Expr parse_expression(std::string_view text, const VariablePredicate& allowed);

/// Variables a, h1..h<delta>.
VariablePredicate source_variables(int delta);

/// Parses and expands an input representation over a, h1..h<delta>.
Polynomial parse_polynomial(std::string_view text, int delta);

/// Parses and expands with an explicit variable allow-list.
Polynomial parse_polynomial(std::string_view text, const VariablePredicate& allowed);

}  // namespace urep
