#pragma once

// Unexpanded polynomial expressions: a DAG of sums, products and powers over
// integer constants, variables and expanded Polynomial leaves. Used as the
// parser's AST and as the closed form of polynomials too large to expand.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "urep/polynomial.hpp"

namespace urep {

class Expr {
public:
    enum class Kind { constant, variable, leaf, sum, product, power };

    struct Node;

    Expr();  // the constant 0
    Expr(long value);  // NOLINT
    Expr(const BigInteger& value);  // NOLINT
    Expr(const Polynomial& leaf);  // NOLINT

    static Expr variable(const std::string& name);
    static Expr from_node(std::shared_ptr<const Node> node) { return Expr(std::move(node)); }

    Kind kind() const;
    const Node& node() const { return *node_; }

    friend Expr operator+(const Expr& lhs, const Expr& rhs);
    friend Expr operator-(const Expr& lhs, const Expr& rhs);
    friend Expr operator*(const Expr& lhs, const Expr& rhs);
    Expr operator-() const;
    friend Expr pow(const Expr& base, std::uint32_t exponent);

    /// Text in the input grammar; parses back to the same polynomial.
    std::string to_string() const;

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct Expr::Node {
    Kind kind = Kind::constant;
    BigInteger value;           // constant
    std::string name;           // variable
    Polynomial poly;            // leaf
    std::vector<Expr> children; // sum, product, power (one child)
    std::vector<int> signs;     // sum: +1 / -1 per child
    std::uint32_t exponent = 0; // power
};

BigInteger evaluate(const Expr& e, const Point& point);

/// Partial evaluation: bound variables replaced by values, the rest expanded.
Polynomial specialize(const Expr& e, const Point& point);

Polynomial expand(const Expr& e);

/// Expansion that gives up once a single product would exceed `pair_budget`
/// term pairs.
std::optional<Polynomial> expand_within(const Expr& e, std::size_t pair_budget);

struct DegreeBound {
    std::uint64_t degree = 0;
    bool exact = false;  // true when the leading coefficient provably survives
};

DegreeBound degree_bound(const Expr& e, const std::string& var);

/// Upper bound on the sum of absolute coefficients of the expansion.
BigInteger abs_sum_bound(const Expr& e);

/// Variables occurring anywhere in the expression, canonically ordered.
std::vector<std::string> expr_variables(const Expr& e);

}  // namespace urep
