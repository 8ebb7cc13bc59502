#pragma once

// Compiled form  exists b, c: AND_i exists d >= 0 [P_i < D_i d < Q_i]
// with P_i, D_i, Q_i polynomials in (a, b, c).

#include <stdexcept>
#include <string>
#include <vector>

#include "urep/encoding.hpp"

namespace urep {

enum class ConjunctFamily {
    digit_test,    // the nu-th balanced digit of V(K)(1+aK+b)^lambda vanishes
    divisibility,  // b = 0 mod K^(lambda+1) up to the first digit
    digit_window,  // digit of b at (lambda+1)^i bounded by c, one per i < delta
    upper_bound,   // b < (c+1) K^((lambda+1)^delta)
};

std::string family_name(ConjunctFamily family);

struct FormOneConjunct {
    ConjunctFamily family = ConjunctFamily::digit_test;
    int index = 0;  // i for digit_window members, 0 otherwise
    Polynomial P;
    Polynomial D;
    Polynomial Q;

    /// e.g. "digit-test", "digit-window[1]".
    std::string label() const;
};

/// Exponent of the digit-window divisor.
enum class WindowExponent {
    standard,  // (lambda+1)^(i+1)
    lowered,   // (lambda+1)^(i-1); kept only to show the suite rejects it
};

/// How the integer z of the digit test is made nonnegative.
enum class DigitShift {
    sign_aware,     // z = d when V > 0 on the domain, z = d + M' otherwise
    always_offset,  // z = d + M' unconditionally; rejects valid witnesses when V > 0
};

struct FormOneOptions {
    WindowExponent window_exponent = WindowExponent::standard;
    DigitShift digit_shift = DigitShift::sign_aware;
};

struct FormOne {
    std::vector<FormOneConjunct> conjuncts;
    FormOneOptions options;

    std::size_t epsilon() const { return conjuncts.size(); }
};

FormOne compile_form1(const EncodingConstants& consts, const FormOneOptions& options = {});

/// Whether some integer d >= 0 has P < D d < Q.
bool eval_conjunct(const BigInteger& P, const BigInteger& D, const BigInteger& Q);

/// Smallest such d, if any.
std::optional<BigInteger> conjunct_multiplier(const BigInteger& P, const BigInteger& D, const BigInteger& Q);

bool eval_form1_inner(const FormOne& f1, const BigInteger& a, const BigInteger& b, const BigInteger& c);

/// The conjuncts specialized at a fixed a, for repeated evaluation over (b, c).
class FormOneEvaluator {
public:
    FormOneEvaluator(const FormOne& f1, const BigInteger& a);

    bool operator()(const BigInteger& b, const BigInteger& c) const;
    /// Index of the first conjunct that fails, or -1.
    int first_failure(const BigInteger& b, const BigInteger& c) const;

private:
    struct Specialized {
        Polynomial P, D, Q;
    };
    std::vector<Specialized> conjuncts_;
};

class SoundnessViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Searches h with entries <= h_bound for a zero of R and checks the compiled
/// form accepts its encoded witness; throws SoundnessViolation otherwise.
bool check_membership_form1(const FormOne& f1, const EncodingConstants& consts, const BigInteger& a,
                            unsigned h_bound);

/// Calls visit(h) for every tuple of `arity` entries in [0, bound] in
/// lexicographic order until visit returns true; returns whether it did.
template <typename Visit>
bool for_each_tuple(int arity, unsigned bound, Visit&& visit) {
    std::vector<BigInteger> h(static_cast<std::size_t>(arity), 0);
    for (;;) {
        if (visit(h)) return true;
        int i = arity - 1;
        while (i >= 0 && h[static_cast<std::size_t>(i)] == bound) h[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) return false;
        ++h[static_cast<std::size_t>(i)];
    }
}

}  // namespace urep
