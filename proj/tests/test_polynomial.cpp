#include <gtest/gtest.h>

#include "oracle.hpp"
#include "urep/kernels.hpp"
#include "urep/parser.hpp"
#include "urep/polynomial.hpp"

using namespace urep;

namespace {

Polynomial var(const std::string& name) { return Polynomial::variable(name); }

Polynomial any(std::string_view text) {
    return parse_polynomial(text, [](std::string_view) { return true; });
}

const std::vector<std::string> kVars{"a", "b", "c", "h1"};

}  // namespace

TEST(Polynomial, AdditiveInverseIsZero) {
    const Polynomial x = var("x");
    const Polynomial sum = arith(ArithOp::add, x, -x);
    EXPECT_TRUE(sum.is_zero());
    EXPECT_TRUE(sum.variables().empty());
    EXPECT_EQ(sum.to_string(), "0");
}

TEST(Polynomial, BinomialSquare) {
    EXPECT_EQ(power(1 + var("x"), 2), any("1 + 2*x + x^2"));
    EXPECT_EQ(power(1 + var("x"), 2).to_string(), "x^2 + 2*x + 1");
    EXPECT_EQ(power(var("x"), 0), Polynomial(1L));
}

TEST(Polynomial, CarrierProductMatchesNaiveExpansion) {
    const Polynomial lhs = var("k") - 2;
    const Polynomial rhs = 1 + var("a") * var("k") + var("h1") * power(var("k"), 2);
    const Polynomial product = arith(ArithOp::multiply, lhs, rhs);
    EXPECT_EQ(oracle::from(product), oracle::mul(oracle::from(lhs), oracle::from(rhs)));
    EXPECT_EQ(product, any("-2 + (1 - 2*a)*k + (a - 2*h1)*k^2 + h1*k^3"));
}

TEST(Polynomial, CanonicalTextIsGradedLexDescending) {
    EXPECT_EQ((19 * var("a") + 19 * var("c") + 38).to_string(), "19*a + 19*c + 38");
    EXPECT_EQ((-2 * var("h1")).to_string(), "-2*h1");
    EXPECT_EQ((var("a") * var("a") * var("b")).to_string(), "a^2*b");
    EXPECT_EQ((var("a") - 2 * var("h1")).to_string(), "a - 2*h1");
    EXPECT_EQ((var("b") + power(var("a"), 2)).to_string(), "a^2 + b");
}

TEST(Polynomial, VariableOrderPutsNumericSuffixLast) {
    EXPECT_TRUE(variable_less("h2", "h10"));
    EXPECT_TRUE(variable_less("a", "b"));
    EXPECT_TRUE(variable_less("c", "f"));
    EXPECT_TRUE(variable_less("f", "h1"));
    EXPECT_TRUE(variable_less("h1", "k"));
    EXPECT_FALSE(variable_less("h10", "h2"));
    const Polynomial p = var("h10") + var("h2");
    EXPECT_EQ(p.variables(), (std::vector<std::string>{"h2", "h10"}));
}

TEST(Polynomial, UnusedVariablesArePruned) {
    const Polynomial p = (var("a") + var("b")) - var("b");
    EXPECT_EQ(p.variables(), (std::vector<std::string>{"a"}));
}

TEST(Polynomial, SubstituteExamples) {
    EXPECT_EQ(substitute(power(var("x"), 2), {{"x", var("y") + 1}}), any("y^2 + 2*y + 1"));
    const Polynomial p = any("3*a^2*b - b + 7");
    EXPECT_EQ(substitute(p, {}), p);
    EXPECT_EQ(substitute(p, {{"zz", var("a")}}), p);
}

TEST(Polynomial, SubstituteShiftMovesRootsOfZ) {
    // Z(g,s,t,y) = ((y-1)g - s)(yg - t) at g=2, s=1, t=3 has roots y = 3/2 and 3/2;
    // shifting y -> y - 5 moves every value by +5 in y.
    const Polynomial y = var("y");
    const Polynomial Z = ((y - 1) * 2 - 1) * (y * 2 - 3);
    const Polynomial shifted = substitute(Z, {{"y", y - 5}});
    for (long v = 0; v <= 10; ++v)
        EXPECT_EQ(evaluate(shifted, {{"y", v + 5}}), evaluate(Z, {{"y", v}})) << "y=" << v;
}

TEST(Polynomial, EvaluateExamples) {
    EXPECT_EQ(evaluate(power(var("x"), 2) - 1, {{"x", 3}}), 8);
    EXPECT_EQ(evaluate(Polynomial(), {{"x", 3}}), 0);
    EXPECT_EQ(evaluate(Polynomial(), {}), 0);
    EXPECT_EQ(evaluate(var("a") - 2 * var("h1"), {{"a", 4}, {"h1", 2}}), 0);
}

TEST(Polynomial, EvaluateReportsUnboundVariable) {
    try {
        evaluate(var("a") + var("h1"), {{"a", 1}});
        FAIL() << "expected UnboundVariable";
    } catch (const UnboundVariable& e) {
        EXPECT_EQ(e.name(), "h1");
    }
}

TEST(Polynomial, SpecializeKeepsFreeVariables) {
    const Polynomial p = any("a*b^2 + 3*a - c");
    EXPECT_EQ(specialize(p, {{"a", 2}}), any("2*b^2 + 6 - c"));
    EXPECT_EQ(specialize(p, {{"a", 2}, {"b", 1}, {"c", 0}}), Polynomial(8L));
}

TEST(Polynomial, CollectByVariableExamples) {
    const Polynomial p = any("-2 + (1 - 2*a)*k + (a - 2*h1)*k^2 + h1*k^3");
    const auto coeffs = collect_by_variable(p, "k");
    ASSERT_EQ(coeffs.size(), 4u);
    EXPECT_EQ(coeffs[0], Polynomial(-2L));
    EXPECT_EQ(coeffs[1], any("1 - 2*a"));
    EXPECT_EQ(coeffs[2], any("a - 2*h1"));
    EXPECT_EQ(coeffs[3], var("h1"));

    const auto seven = collect_by_variable(Polynomial(7L), "k");
    ASSERT_EQ(seven.size(), 1u);
    EXPECT_EQ(seven[0], Polynomial(7L));

    const auto linear = collect_by_variable(any("a*k + k"), "k");
    ASSERT_EQ(linear.size(), 2u);
    EXPECT_TRUE(linear[0].is_zero());
    EXPECT_EQ(linear[1], any("a + 1"));
}

TEST(Polynomial, StatsExamples) {
    const auto s = stats(var("a") - 2 * var("h1"));
    EXPECT_EQ(s.abs_coefficient_sum, 3);
    EXPECT_EQ(s.total_degree, 1u);
    EXPECT_EQ(s.term_count, 2u);
    EXPECT_EQ(s.max_abs_coefficient, 2);
    EXPECT_EQ(s.degree_per_variable.at("h1"), 1u);

    const auto zero = stats(Polynomial());
    EXPECT_EQ(zero.total_degree, 0u);
    EXPECT_EQ(zero.term_count, 0u);
    EXPECT_EQ(zero.abs_coefficient_sum, 0);
    EXPECT_EQ(zero.max_abs_coefficient, 0);

    EXPECT_EQ(stats(1 - 2 * var("a")).abs_coefficient_sum, 3);
}

TEST(Polynomial, DegreesAndDigits) {
    const Polynomial p = any("a^3*b + b^5 - 1");
    EXPECT_EQ(degree_in(p, "a"), 3u);
    EXPECT_EQ(degree_in(p, "b"), 5u);
    EXPECT_EQ(degree_in(p, "z"), 0u);
    EXPECT_EQ(total_degree(p), 5u);
    EXPECT_EQ(decimal_digits(0), 1u);
    EXPECT_EQ(decimal_digits(-999), 3u);
    EXPECT_EQ(decimal_digits(BigInteger("1000000000000000000000")), 22u);
}

TEST(Polynomial, ExponentVectorsKeepAmbientLength) {
    const Polynomial p = var("a") * var("c") + 1;
    const auto terms = p.terms_over({"a", "b", "c"});
    ASSERT_EQ(terms.size(), 2u);
    EXPECT_EQ(terms[0].exponents, (ExponentVector{1, 0, 1}));
    EXPECT_EQ(terms[1].exponents, (ExponentVector{0, 0, 0}));
}

TEST(Polynomial, HugeCoefficientsStayExact) {
    const Polynomial p = power(BigInteger("123456789123456789") * var("x") + 1, 5);
    EXPECT_EQ(evaluate(p, {{"x", 1}}), power(Polynomial(BigInteger("123456789123456790")), 5).constant_term());
}

TEST(Polynomial, LatexRendering) {
    EXPECT_EQ(any("a^2*b - 3*h1").to_latex(), "a^{2} b - 3 h_{1}");
}

class RingAxioms : public ::testing::TestWithParam<int> {};

TEST_P(RingAxioms, HoldOnRandomPolynomials) {
    std::mt19937_64 rng(static_cast<unsigned>(GetParam()));
    const auto p = oracle::random_polynomial(rng, kVars, 6, 3, 50);
    const auto q = oracle::random_polynomial(rng, {"a", "c"}, 5, 4, 1000);
    const auto r = oracle::random_polynomial(rng, {"b", "h1", "k"}, 4, 2, 7);
    EXPECT_EQ(p + q, q + p);
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ((p + q) + r, p + (q + r));
    EXPECT_EQ((p * q) * r, p * (q * r));
    EXPECT_EQ(p * (q + r), p * q + p * r);
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_EQ(p * Polynomial(1L), p);
    EXPECT_TRUE((p * Polynomial()).is_zero());
}

TEST_P(RingAxioms, MultiplyAgreesWithNaiveOracle) {
    std::mt19937_64 rng(static_cast<unsigned>(GetParam()) + 1000);
    const auto p = oracle::random_polynomial(rng, kVars, 8, 4, 100);
    const auto q = oracle::random_polynomial(rng, {"a", "b", "k"}, 8, 4, 100);
    EXPECT_EQ(oracle::from(p * q), oracle::mul(oracle::from(p), oracle::from(q)));
    EXPECT_EQ(oracle::to(oracle::from(p)), p);
}

TEST_P(RingAxioms, EvaluateCommutesWithArithmetic) {
    std::mt19937_64 rng(static_cast<unsigned>(GetParam()) + 2000);
    const auto p = oracle::random_polynomial(rng, kVars, 6, 3, 50);
    const auto q = oracle::random_polynomial(rng, kVars, 6, 3, 50);
    std::uniform_int_distribution<long> value(-20, 20);
    Point point;
    for (const auto& v : kVars) point[v] = value(rng);
    EXPECT_EQ(evaluate(p * q, point), evaluate(p, point) * evaluate(q, point));
    EXPECT_EQ(evaluate(p + q, point), evaluate(p, point) + evaluate(q, point));
    EXPECT_EQ(evaluate(power(p, 3), point), evaluate(p, point) * evaluate(p, point) * evaluate(p, point));
}

TEST_P(RingAxioms, SubstituteThenEvaluateComposes) {
    std::mt19937_64 rng(static_cast<unsigned>(GetParam()) + 3000);
    const auto p = oracle::random_polynomial(rng, kVars, 6, 3, 50);
    const auto image_a = oracle::random_polynomial(rng, {"b", "k"}, 3, 2, 9);
    const auto image_h = oracle::random_polynomial(rng, {"a", "c"}, 3, 2, 9);
    std::uniform_int_distribution<long> value(-9, 9);
    Point point;
    for (const auto& v : {"a", "b", "c", "h1", "k"}) point[v] = value(rng);
    Point composed = point;
    composed["a"] = evaluate(image_a, point);
    composed["h1"] = evaluate(image_h, point);
    EXPECT_EQ(evaluate(substitute(p, {{"a", image_a}, {"h1", image_h}}), point), evaluate(p, composed));
}

TEST_P(RingAxioms, CollectThenRecombineIsIdentity) {
    std::mt19937_64 rng(static_cast<unsigned>(GetParam()) + 4000);
    const auto p = oracle::random_polynomial(rng, {"a", "h1", "k"}, 10, 5, 30);
    const auto coeffs = collect_by_variable(p, "k");
    Polynomial back;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        EXPECT_FALSE(coeffs[i].contains("k"));
        back += coeffs[i] * power(var("k"), i);
    }
    EXPECT_EQ(back, p);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RingAxioms, ::testing::Range(1, 26));

TEST(Kernels, ParallelProductMatchesReference) {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 10; ++round) {
        const auto p = oracle::random_polynomial(rng, kVars, 150, 6, 1000000);
        const auto q = oracle::random_polynomial(rng, {"a", "b", "f", "k"}, 150, 6, 1000000);
        const auto reference = kernels::multiply_reference(p, q);
        EXPECT_EQ(kernels::multiply_parallel(p, q, 1), reference);
        EXPECT_EQ(kernels::multiply_parallel(p, q, 4), reference);
        EXPECT_EQ(kernels::multiply_parallel(p, q), reference);
    }
}

TEST(Kernels, WideExponentsFallBackExactly) {
    const Polynomial p = power(var("x"), 4000000000u / 2) + 1;
    const Polynomial q = var("x") * var("y") - 1;
    EXPECT_EQ(kernels::multiply_parallel(p, q, 2), kernels::multiply_reference(p, q));
}

TEST(Kernels, EmptyAndConstantOperands) {
    const Polynomial p = var("a") + 3;
    EXPECT_TRUE(kernels::multiply_parallel(p, Polynomial(), 2).is_zero());
    EXPECT_EQ(kernels::multiply_parallel(p, Polynomial(5L), 2), 5 * var("a") + 15);
}
