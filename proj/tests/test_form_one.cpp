#include <gtest/gtest.h>

#include "urep/form_one.hpp"
#include "urep/parser.hpp"

using namespace urep;

namespace {

Polynomial var(const std::string& name) { return Polynomial::variable(name); }

EncodingConstants constants_for(const char* text, int delta) {
    return build_constants(delta, parse_polynomial(text, delta));
}

const FormOneConjunct& find(const FormOne& f1, ConjunctFamily family) {
    for (const auto& c : f1.conjuncts)
        if (c.family == family) return c;
    throw std::out_of_range("family missing");
}

// Enumerates d in [0, limit] directly.
bool brute_conjunct(long P, long D, long Q, long limit) {
    for (long d = 0; d <= limit; ++d)
        if (P < D * d && D * d < Q) return true;
    return false;
}

// Families other than the digit test: exactly the digit-coding conditions.
bool coding_conjuncts_hold(const FormOne& f1, const BigInteger& a, const BigInteger& b, const BigInteger& c) {
    const Point point{{"a", a}, {"b", b}, {"c", c}};
    for (const auto& conj : f1.conjuncts) {
        if (conj.family == ConjunctFamily::digit_test) continue;
        if (!eval_conjunct(evaluate(conj.P, point), evaluate(conj.D, point), evaluate(conj.Q, point))) return false;
    }
    return true;
}

}  // namespace

TEST(CompileForm1, ConjunctCounts) {
    const auto even = compile_form1(constants_for("a - 2*h1", 1));
    ASSERT_EQ(even.epsilon(), 3u);
    EXPECT_EQ(even.conjuncts[0].family, ConjunctFamily::digit_test);
    EXPECT_EQ(even.conjuncts[1].family, ConjunctFamily::divisibility);
    EXPECT_EQ(even.conjuncts[2].family, ConjunctFamily::upper_bound);

    const auto composites = compile_form1(constants_for("(h1+2)*(h2+2) - a", 2));
    ASSERT_EQ(composites.epsilon(), 4u);
    EXPECT_EQ(composites.conjuncts[2].family, ConjunctFamily::digit_window);
    EXPECT_EQ(composites.conjuncts[2].label(), "digit-window[1]");

    for (const char* text : {"a - h1^2", "h1", "a - h1 - h2 - h3"}) {
        const int delta = std::string(text).find("h3") != std::string::npos ? 3 : 1;
        EXPECT_EQ(compile_form1(constants_for(text, delta)).epsilon(), static_cast<std::size_t>(delta) + 2) << text;
    }
}

TEST(CompileForm1, EvenSetFamilies) {
    const auto f1 = compile_form1(constants_for("a - 2*h1", 1));
    const Polynomial K = 19 * (2 + var("a") + var("c"));
    const auto& div = find(f1, ConjunctFamily::divisibility);
    EXPECT_EQ(div.P, var("b") - 1);
    EXPECT_EQ(div.D, K * K);
    EXPECT_EQ(div.Q, var("b") + 1);

    const auto& digit = find(f1, ConjunctFamily::digit_test);
    EXPECT_EQ(digit.D, 2 * K * K * K);
    EXPECT_EQ(total_degree(digit.D), 3u);
    EXPECT_EQ(degree_in(digit.D, "a"), 3u);
    const Polynomial M = (K - 2) * (1 + var("a") * K + var("b"));
    EXPECT_EQ(digit.P, 2 * M - K * K);
    EXPECT_EQ(digit.Q, 2 * M + K * K);

    const auto& top = find(f1, ConjunctFamily::upper_bound);
    EXPECT_EQ(top.P, var("b") - 1);
    EXPECT_EQ(top.D, var("b"));
    EXPECT_EQ(top.Q, (var("c") + 1) * K * K);
}

TEST(CompileForm1, AlwaysOffsetShiftUsesShiftedCentre) {
    const auto c = constants_for("a - 2*h1", 1);
    const auto f1 = compile_form1(c, {WindowExponent::standard, DigitShift::always_offset});
    const Polynomial K = c.K;
    const Polynomial A = 2 * (K - 2) * (1 + var("a") * K + var("b")) * (1 - K * K * K);
    const auto& digit = find(f1, ConjunctFamily::digit_test);
    EXPECT_EQ(digit.P, A - K * K);
    EXPECT_EQ(digit.Q, A + K * K);
}

TEST(CompileForm1, NegativeCarrierUsesShiftedCentre) {
    // R = 2 h1 - a gives V = 2 - k, negative for every K.
    const auto c = constants_for("2*h1 - a", 1);
    EXPECT_EQ(c.v_sign(), -1);
    const auto sign_aware = compile_form1(c);
    const auto offset = compile_form1(c, {WindowExponent::standard, DigitShift::always_offset});
    EXPECT_EQ(sign_aware.conjuncts[0].P, offset.conjuncts[0].P);
    for (long a = 0; a <= 12; ++a)
        for (long h = 0; h <= 8; ++h) {
            const auto w = witness_encode(c, a, {h});
            EXPECT_EQ(eval_form1_inner(sign_aware, a, w.b, w.c), a == 2 * h) << "a=" << a << " h=" << h;
        }
}

TEST(CompileForm1, AlwaysOffsetShiftRejectsValidWitnessWhenCarrierIsPositive) {
    const auto c = constants_for("a - 2*h1", 1);
    const auto offset = compile_form1(c, {WindowExponent::standard, DigitShift::always_offset});
    EXPECT_FALSE(eval_form1_inner(offset, 4, 46208, 2));
    EXPECT_TRUE(eval_form1_inner(compile_form1(c), 4, 46208, 2));
}

TEST(CompileForm1, CompositesWindowDivisor) {
    const auto c = constants_for("(h1+2)*(h2+2) - a", 2);
    const auto standard = compile_form1(c);
    const auto offset = compile_form1(c, {WindowExponent::lowered, DigitShift::sign_aware});
    const auto& window = find(standard, ConjunctFamily::digit_window);
    EXPECT_EQ(window.D, power(c.K, 9));
    EXPECT_EQ(window.P, var("b") - (var("c") + 1) * power(c.K, 3));
    EXPECT_EQ(find(offset, ConjunctFamily::digit_window).D, c.K);
}

TEST(EvalConjunct, Examples) {
    EXPECT_TRUE(eval_conjunct(-1, 5, 1));
    EXPECT_FALSE(eval_conjunct(0, 2, 2));
    EXPECT_TRUE(eval_conjunct(2, 3, 7));
    EXPECT_EQ(*conjunct_multiplier(2, 3, 7), 1);
    EXPECT_TRUE(eval_conjunct(-1, 0, 1));
    EXPECT_FALSE(eval_conjunct(0, 0, 1));
    EXPECT_FALSE(eval_conjunct(-5, 0, 0));
}

TEST(EvalConjunct, AgreesWithEnumerationOverNonnegativeD) {
    for (long P = -12; P <= 12; ++P)
        for (long D = -5; D <= 5; ++D)
            for (long Q = -12; Q <= 12; ++Q) {
                const auto d = conjunct_multiplier(P, D, Q);
                ASSERT_EQ(d.has_value(), brute_conjunct(P, D, Q, 40)) << P << ' ' << D << ' ' << Q;
                if (d) {
                    EXPECT_GE(*d, 0);
                    EXPECT_LT(P, D * *d);
                    EXPECT_LT(D * *d, Q);
                }
            }
}

TEST(EvalForm1Inner, EvenSetExamples) {
    const auto f1 = compile_form1(constants_for("a - 2*h1", 1));
    EXPECT_TRUE(eval_form1_inner(f1, 4, 46208, 2));
    EXPECT_FALSE(eval_form1_inner(f1, 3, 12996, 1));
    EXPECT_TRUE(eval_form1_inner(f1, 0, 0, 0));
}

TEST(EvalForm1Inner, SpecializedEvaluatorAgrees) {
    const auto f1 = compile_form1(constants_for("(h1+2)*(h2+2) - a", 2));
    for (long a : {0L, 6L, 9L, 11L}) {
        const FormOneEvaluator ev(f1, a);
        for (long b = 0; b <= 40; b += 3)
            for (long c = 0; c <= 3; ++c) EXPECT_EQ(ev(b, c), eval_form1_inner(f1, a, b, c));
        const auto w = witness_encode(constants_for("(h1+2)*(h2+2) - a", 2), a, {1, 1});
        EXPECT_EQ(ev(w.b, w.c), eval_form1_inner(f1, a, w.b, w.c));
        EXPECT_EQ(ev(w.b, w.c), a == 9);
    }
}

TEST(CheckMembershipForm1, Examples) {
    const auto even = constants_for("a - 2*h1", 1);
    const auto f_even = compile_form1(even);
    EXPECT_TRUE(check_membership_form1(f_even, even, 10, 10));
    EXPECT_FALSE(check_membership_form1(f_even, even, 7, 50));
    const auto squares = constants_for("a - h1^2", 1);
    EXPECT_TRUE(check_membership_form1(compile_form1(squares), squares, 49, 10));
}

TEST(CheckMembershipForm1, ReportsSoundnessViolation) {
    const auto even = constants_for("a - 2*h1", 1);
    const auto offset = compile_form1(even, {WindowExponent::standard, DigitShift::always_offset});
    EXPECT_THROW(check_membership_form1(offset, even, 4, 10), SoundnessViolation);
}

TEST(CodingConjuncts, EquivalentToDecodability) {
    // Families other than the digit test hold iff b is a digit coding bounded by c.
    for (const auto& [text, delta] : std::vector<std::pair<const char*, int>>{{"a - 2*h1", 1},
                                                                              {"(h1+2)*(h2+2) - a", 2}}) {
        const auto c = constants_for(text, delta);
        const auto f1 = compile_form1(c);
        for (long a = 0; a <= 8; a += 2) {
            for (long cc = 0; cc <= 8; cc += 2) {
                const BigInteger k = evaluate_K(c, a, cc);
                std::vector<BigInteger> bs;
                for (long b = 0; b <= 400; ++b) bs.push_back(b);
                for (long b = 0; b <= 200; ++b) bs.push_back(k * k - 100 + b);
                for_each_tuple(delta, static_cast<unsigned>(cc) + 1, [&](const std::vector<BigInteger>& h) {
                    const BigInteger b = encode_B(h, k, c.lambda());
                    for (long j = 0; j <= 9; ++j) {
                        BigInteger step;
                        mpz_pow_ui(step.get_mpz_t(), k.get_mpz_t(), static_cast<unsigned long>(j));
                        bs.push_back(b + step);
                        if (b >= step) bs.push_back(b - step);
                    }
                    bs.push_back(b);
                    return false;
                });
                for (const auto& b : bs)
                    ASSERT_EQ(coding_conjuncts_hold(f1, a, b, cc), decode_witness(c, a, b, cc).has_value())
                        << text << " a=" << a << " b=" << b << " c=" << cc;
            }
        }
    }
}

TEST(CodingConjuncts, LoweredWindowAcceptsStrayDigit) {
    const auto c = constants_for("(h1+2)*(h2+2) - a", 2);
    const auto offset = compile_form1(c, {WindowExponent::lowered, DigitShift::sign_aware});
    const auto w = witness_encode(c, 9, {1, 1});
    const BigInteger stray = w.b + w.k * w.k * w.k * w.k;
    EXPECT_FALSE(decode_witness(c, 9, stray, w.c));
    EXPECT_TRUE(coding_conjuncts_hold(offset, 9, stray, w.c));
    EXPECT_FALSE(coding_conjuncts_hold(compile_form1(c), 9, stray, w.c));
}

TEST(Tuples, LexicographicEnumeration) {
    std::vector<std::string> seen;
    for_each_tuple(2, 1, [&](const std::vector<BigInteger>& h) {
        seen.push_back(h[0].get_str() + h[1].get_str());
        return false;
    });
    EXPECT_EQ(seen, (std::vector<std::string>{"00", "01", "10", "11"}));
    EXPECT_TRUE(for_each_tuple(3, 4, [](const std::vector<BigInteger>& h) { return h[2] == 3; }));
}
