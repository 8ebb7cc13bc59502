#include "urep/form_one.hpp"

namespace urep {

std::string family_name(ConjunctFamily family) {
    switch (family) {
        case ConjunctFamily::digit_test: return "digit-test";
        case ConjunctFamily::divisibility: return "divisibility";
        case ConjunctFamily::digit_window: return "digit-window";
        case ConjunctFamily::upper_bound: return "upper-bound";
    }
    return "unknown";
}

std::string FormOneConjunct::label() const {
    if (family == ConjunctFamily::digit_window) return family_name(family) + "[" + std::to_string(index) + "]";
    return family_name(family);
}

FormOne compile_form1(const EncodingConstants& consts, const FormOneOptions& options) {
    const auto polys = digit_test_polynomials(consts);
    const Polynomial& K = polys.K;
    const Polynomial b = Polynomial::variable("b");
    const Polynomial c = Polynomial::variable("c");
    const auto lambda = static_cast<std::uint64_t>(consts.lambda());
    const int delta = consts.delta();

    FormOne f1;
    f1.options = options;

    const Polynomial low = power(K, consts.nu);
    const Polynomial modulus = 2 * (low * K);
    Polynomial centre = 2 * polys.Mprime;
    if (options.digit_shift == DigitShift::always_offset || consts.v_sign() < 0) centre = centre * (1 - low * K);
    f1.conjuncts.push_back({ConjunctFamily::digit_test, 0, centre - low, modulus, centre + low});

    f1.conjuncts.push_back({ConjunctFamily::divisibility, 0, b - 1, power(K, lambda + 1), b + 1});

    for (int i = 1; i < delta; ++i) {
        const std::uint64_t divisor = options.window_exponent == WindowExponent::standard
                                          ? consts.digit_position(i + 1)
                                          : consts.digit_position(i - 1);
        f1.conjuncts.push_back({ConjunctFamily::digit_window, i, b - (c + 1) * power(K, consts.digit_position(i)),
                                power(K, divisor), b + 1});
    }

    f1.conjuncts.push_back(
        {ConjunctFamily::upper_bound, 0, b - 1, b, (c + 1) * power(K, consts.digit_position(delta))});

    if (f1.epsilon() != static_cast<std::size_t>(delta) + 2)
        throw std::logic_error("compile_form1: conjunct count differs from delta + 2");
    return f1;
}

std::optional<BigInteger> conjunct_multiplier(const BigInteger& P, const BigInteger& D, const BigInteger& Q) {
    const int sign = sgn(D);
    if (sign == 0) {
        if (sgn(P) < 0 && sgn(Q) > 0) return BigInteger(0);
        return std::nullopt;
    }
    BigInteger d;
    if (sign > 0) {
        // smallest d with D d > P
        mpz_fdiv_q(d.get_mpz_t(), P.get_mpz_t(), D.get_mpz_t());
        d += 1;
        if (sgn(d) < 0) d = 0;
        if (D * d < Q) return d;
        return std::nullopt;
    }
    // D < 0: smallest d with D d < Q, i.e. |D| d > -Q
    const BigInteger magnitude = -D;
    const BigInteger neg_q = -Q;
    mpz_fdiv_q(d.get_mpz_t(), neg_q.get_mpz_t(), magnitude.get_mpz_t());
    d += 1;
    if (sgn(d) < 0) d = 0;
    if (D * d > P) return d;
    return std::nullopt;
}

bool eval_conjunct(const BigInteger& P, const BigInteger& D, const BigInteger& Q) {
    return conjunct_multiplier(P, D, Q).has_value();
}

bool eval_form1_inner(const FormOne& f1, const BigInteger& a, const BigInteger& b, const BigInteger& c) {
    const Point point{{"a", a}, {"b", b}, {"c", c}};
    for (const auto& conj : f1.conjuncts) {
        if (!eval_conjunct(evaluate(conj.P, point), evaluate(conj.D, point), evaluate(conj.Q, point))) return false;
    }
    return true;
}

FormOneEvaluator::FormOneEvaluator(const FormOne& f1, const BigInteger& a) {
    const Point point{{"a", a}};
    conjuncts_.reserve(f1.conjuncts.size());
    for (const auto& conj : f1.conjuncts)
        conjuncts_.push_back({specialize(conj.P, point), specialize(conj.D, point), specialize(conj.Q, point)});
}

int FormOneEvaluator::first_failure(const BigInteger& b, const BigInteger& c) const {
    const Point point{{"b", b}, {"c", c}};
    for (std::size_t i = 0; i < conjuncts_.size(); ++i) {
        const auto& conj = conjuncts_[i];
        if (!eval_conjunct(evaluate(conj.P, point), evaluate(conj.D, point), evaluate(conj.Q, point)))
            return static_cast<int>(i);
    }
    return -1;
}

bool FormOneEvaluator::operator()(const BigInteger& b, const BigInteger& c) const { return first_failure(b, c) < 0; }

bool check_membership_form1(const FormOne& f1, const EncodingConstants& consts, const BigInteger& a,
                            unsigned h_bound) {
    const Polynomial& R = consts.source.R;
    return for_each_tuple(consts.delta(), h_bound, [&](const std::vector<BigInteger>& h) {
        if (evaluate(R, source_point(a, h)) != 0) return false;
        const Witness w = witness_encode(consts, a, h);
        if (!eval_form1_inner(f1, a, w.b, w.c))
            throw SoundnessViolation("compiled form rejects the encoded witness at a=" + a.get_str() +
                                     ", b=" + w.b.get_str() + ", c=" + w.c.get_str());
        return true;
    });
}

}  // namespace urep
