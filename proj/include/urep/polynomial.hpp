#pragma once

// Exact sparse multivariate polynomials over arbitrary-precision integers.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace urep {

using BigInteger = mpz_class;
using ExponentVector = std::vector<std::uint32_t>;

/// Point assignment for evaluation, keyed by variable name.
using Point = std::map<std::string, BigInteger, std::less<>>;

class UnboundVariable : public std::runtime_error {
public:
    explicit UnboundVariable(const std::string& name)
        : std::runtime_error("unbound variable '" + name + "'"), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// Canonical variable order: alphabetic prefix first, then numeric suffix,
/// so h2 < h10 and a < b < c < f < h1 < k.
bool variable_less(std::string_view lhs, std::string_view rhs);

struct Term {
    ExponentVector exponents;
    BigInteger coefficient;
};

/// Descending graded-lex order on exponent vectors of equal length.
bool graded_lex_greater(const ExponentVector& lhs, const ExponentVector& rhs);

class Polynomial {
public:
    Polynomial() = default;
    Polynomial(long value);  // NOLINT: integer literals promote naturally
    Polynomial(const BigInteger& value);  // NOLINT

    static Polynomial variable(const std::string& name);
    /// Builds a canonical polynomial from possibly unsorted, duplicated terms
    /// over the given variables.
    static Polynomial from_terms(std::vector<std::string> variables, std::vector<Term> terms);
    /// Trusted constructor: variables canonically ordered and all used, terms
    /// sorted graded-lex descending with nonzero coefficients.
    static Polynomial from_canonical_terms(std::vector<std::string> variables, std::vector<Term> terms);

    const std::vector<std::string>& variables() const noexcept { return variables_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept { return variables_.empty(); }
    bool contains(std::string_view var) const;

    /// Constant term (coefficient of the all-zero exponent vector).
    BigInteger constant_term() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);

    friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
    friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
    friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
    friend bool operator==(const Polynomial& lhs, const Polynomial& rhs);

    /// Canonical text: graded-lex descending, explicit `*` and `^`.
    std::string to_string() const;
    std::string to_latex() const;

    /// Same polynomial expressed over a superset of its variables.
    std::vector<Term> terms_over(const std::vector<std::string>& ambient) const;

private:
    std::vector<std::string> variables_;
    std::vector<Term> terms_;
};

enum class ArithOp { add, subtract, multiply };

Polynomial arith(ArithOp op, const Polynomial& lhs, const Polynomial& rhs);
Polynomial power(const Polynomial& base, std::uint64_t exponent);

/// Simultaneous substitution; unbound variables pass through.
Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial, std::less<>>& bindings);

/// Exact value; throws UnboundVariable when a variable of p has no binding.
BigInteger evaluate(const Polynomial& p, const Point& point);

/// Substitutes integer values for the bound variables only.
Polynomial specialize(const Polynomial& p, const Point& point);

/// Coefficients c_0..c_n with p = sum c_i v^i; n is the degree of p in v.
std::vector<Polynomial> collect_by_variable(const Polynomial& p, std::string_view v);

std::uint64_t degree_in(const Polynomial& p, std::string_view v);
std::uint64_t total_degree(const Polynomial& p);

struct PolynomialStats {
    std::map<std::string, std::uint64_t, std::less<>> degree_per_variable;
    std::uint64_t total_degree = 0;
    std::uint64_t term_count = 0;
    BigInteger abs_coefficient_sum = 0;
    BigInteger max_abs_coefficient = 0;
};

PolynomialStats stats(const Polynomial& p);

/// Decimal digit count of |value| (0 has one digit).
std::size_t decimal_digits(const BigInteger& value);

}  // namespace urep
