#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "mnv/algebra/rational_fn.hpp"

namespace mnv {

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

/// Expression tree over integer literals, the variables x, y, s, the
/// imaginary unit i and + - * / ^ (non-negative integer exponents).
struct ExprNode {
    enum class Kind { constant, variable, neg, add, sub, mul, div, pow };

    Kind kind = Kind::constant;
    mpz_class value;     ///< constant
    char name = 0;       ///< variable: 'x', 'y', 's' or 'i'
    ExprPtr lhs, rhs;    ///< operands (neg and pow use lhs only)
    unsigned exponent = 0;
};

inline constexpr std::size_t kMaxExprBytes = 64 * 1024;

/// Precedence: ^ > unary minus > * / > + -, all left-associative. Throws
/// ParseError carrying the 0-based byte offset and the expected tokens.
ExprPtr parse_expr(std::string_view text);

/// Minimal-parenthesis rendering that parses back to the same tree.
std::string print_expr(const ExprNode& e);

/// Exact lowering; throws DivisionByZeroFunction for a zero divisor.
RationalFn lower_expr(const ExprNode& e);

}  // namespace mnv
