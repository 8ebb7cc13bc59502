#include <gtest/gtest.h>

#include "oracle.hpp"
#include "urep/expr.hpp"
#include "urep/parser.hpp"

using namespace urep;

namespace {

Polynomial var(const std::string& name) { return Polynomial::variable(name); }

bool any_name(std::string_view) { return true; }

ParseError::Kind parse_error_kind(std::string_view text, int delta) {
    try {
        parse_polynomial(text, delta);
    } catch (const ParseError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error for '" << text << "'";
    return ParseError::Kind::syntax;
}

}  // namespace

TEST(Parser, EvenSet) { EXPECT_EQ(parse_polynomial("a - 2*h1", 1), var("a") - 2 * var("h1")); }

TEST(Parser, CompositesExpand) {
    const auto p = parse_polynomial("(h1+2)*(h2+2) - a", 2);
    EXPECT_EQ(p, var("h1") * var("h2") + 2 * var("h1") + 2 * var("h2") + 4 - var("a"));
    EXPECT_EQ(total_degree(p), 2u);
    EXPECT_EQ(p.to_string(), "h1*h2 - a + 2*h1 + 2*h2 + 4");
}

TEST(Parser, UnknownVariable) {
    EXPECT_EQ(parse_error_kind("a - 2*h2", 1), ParseError::Kind::unknown_variable);
    EXPECT_EQ(parse_error_kind("a + h3", 2), ParseError::Kind::unknown_variable);
    EXPECT_EQ(parse_error_kind("a + h0", 2), ParseError::Kind::unknown_variable);
    EXPECT_EQ(parse_error_kind("x", 2), ParseError::Kind::unknown_variable);
}

TEST(Parser, PositionPointsAtOffendingToken) {
    try {
        parse_polynomial("a - 2*h2", 1);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 6u);
        EXPECT_NE(std::string(e.what()).find("position 6"), std::string::npos);
    }
}

TEST(Parser, NonIntegerExponent) {
    EXPECT_EQ(parse_error_kind("a^h1", 1), ParseError::Kind::non_integer_exponent);
    EXPECT_EQ(parse_error_kind("a^2.5", 1), ParseError::Kind::non_integer_exponent);
    EXPECT_EQ(parse_error_kind("a^-1", 1), ParseError::Kind::non_integer_exponent);
}

TEST(Parser, SyntaxErrors) {
    for (const char* text : {"", "a +", "(a", "a)", "2 3", "a ** 2", "1.5*a", "a $ 1"})
        EXPECT_EQ(parse_error_kind(text, 1), ParseError::Kind::syntax) << text;
}

TEST(Parser, PrecedenceAndSigns) {
    EXPECT_EQ(parse_polynomial("-a^2", 1), -(var("a") * var("a")));
    EXPECT_EQ(parse_polynomial("2*a^2*h1", 1), 2 * var("a") * var("a") * var("h1"));
    EXPECT_EQ(parse_polynomial("-(a - 1)", 1), 1 - var("a"));
    EXPECT_EQ(parse_polynomial("a - -3", 1), var("a") + 3);
    EXPECT_EQ(parse_polynomial("(a+1)^0", 1), Polynomial(1L));
    EXPECT_EQ(parse_polynomial("+5", 1), Polynomial(5L));
    EXPECT_EQ(parse_polynomial("  a   -2 * h1 ", 1), var("a") - 2 * var("h1"));
}

TEST(Parser, BigLiterals) {
    EXPECT_EQ(parse_polynomial("123456789012345678901234567890*a", 1),
              BigInteger("123456789012345678901234567890") * var("a"));
}

TEST(Parser, CanonicalTextRoundTrips) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const auto p = oracle::random_polynomial(rng, {"a", "h1", "h2", "h10"}, 7, 4, 1000000);
        EXPECT_EQ(parse_polynomial(p.to_string(), 10), p) << p.to_string();
    }
}

TEST(Expr, ExpandMatchesEvaluate) {
    const Expr a = Expr::variable("a");
    const Expr b = Expr::variable("b");
    const Expr e = pow(a - b, 3) * (a + Expr(2L)) - Expr(var("a") * var("b"));
    const Polynomial p = expand(e);
    for (long x = -3; x <= 3; ++x)
        for (long y = -3; y <= 3; ++y) {
            const Point point{{"a", x}, {"b", y}};
            EXPECT_EQ(evaluate(e, point), evaluate(p, point));
        }
}

TEST(Expr, TextParsesBackToTheSamePolynomial) {
    const Expr s = Expr::variable("s1");
    const Expr t = Expr::variable("t1");
    const Expr f = Expr::variable("f");
    const Expr e = (f - pow(s, 2) - pow(t, 2) - Expr(2L)) * (Expr(var("a") - 3) - s) - Expr(-7L) * t;
    EXPECT_EQ(expand(parse_expression(e.to_string(), any_name)), expand(e)) << e.to_string();
}

TEST(Expr, NegativeLeavesAreParenthesized) {
    const Expr e = Expr(var("a") - 1) * Expr(-2L) - Expr(var("b") - var("c"));
    EXPECT_EQ(expand(parse_expression(e.to_string(), any_name)), expand(e)) << e.to_string();
}

TEST(Expr, SpecializeIsPartialEvaluation) {
    const Expr e = pow(Expr::variable("a") * Expr(var("c") + 1) - Expr::variable("f"), 2);
    const Polynomial p = specialize(e, {{"a", 3}, {"c", 1}});
    EXPECT_EQ(p, expand(parse_expression("(6 - f)^2", any_name)));
}

TEST(Expr, DegreeBound) {
    const Expr f = Expr::variable("f");
    const Expr a = Expr::variable("a");
    const Expr e = (f * a - Expr(1L)) * (f * Expr(var("b") + 1) - a);
    const auto d = degree_bound(e, "f");
    EXPECT_EQ(d.degree, 2u);
    EXPECT_TRUE(d.exact);
    EXPECT_EQ(degree_in(expand(e), "f"), 2u);

    const Expr cancelling = f - f;
    EXPECT_FALSE(degree_bound(cancelling, "f").exact);
    EXPECT_EQ(degree_bound(pow(f + a, 5), "a").degree, 5u);
}

TEST(Expr, AbsSumBoundDominatesExpansion) {
    const Expr e = pow(Expr(var("a") - 2 * var("b")) + Expr(3L), 4) - Expr(var("a"));
    EXPECT_GE(abs_sum_bound(e), stats(expand(e)).abs_coefficient_sum);
}

TEST(Expr, ExpandWithinRespectsBudget) {
    const Expr big = pow(Expr(var("a") + var("b") + var("c") + 1), 12);
    EXPECT_FALSE(expand_within(big, 10).has_value());
    const auto small = expand_within(pow(Expr(var("a") + 1), 2), 1000);
    ASSERT_TRUE(small.has_value());
    EXPECT_EQ(*small, var("a") * var("a") + 2 * var("a") + 1);
}

TEST(Expr, VariablesAreCanonicallyOrdered) {
    const Expr e = Expr::variable("h10") * Expr(var("h2") + var("a")) + Expr::variable("f");
    EXPECT_EQ(expr_variables(e), (std::vector<std::string>{"a", "f", "h2", "h10"}));
}
