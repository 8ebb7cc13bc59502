#pragma once

// Digit coding of a Diophantine representation  exists h [R(a, h) = 0]:
// normalization of R, the carrier polynomials T_i of V(k)(1+ak+B)^lambda,
// the constants nu, gamma, K, and witness encoding/decoding.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "urep/polynomial.hpp"

namespace urep {

class EncodingError : public std::runtime_error {
public:
    enum class Kind { degree_zero, no_unknowns, index_overflow, foreign_variable, too_large };

    EncodingError(Kind kind, const std::string& message);
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Name of the i-th unknown, i >= 1.
std::string unknown_name(int i);

/// Exponents (alpha_0 for a, alpha_1..alpha_delta for h_1..h_delta).
using MultiIndex = std::vector<std::uint32_t>;

struct SourceRepresentation {
    int delta = 0;
    int lambda = 0;
    Polynomial R;

    std::vector<std::string> variables() const;  // a, h1..h<delta>
};

SourceRepresentation validate_source(int delta, const Polynomial& R);

/// Multinomial coefficient lambda! / (alpha_0! ... alpha_delta! (lambda - |alpha|)!).
BigInteger kappa(const MultiIndex& alpha, int lambda);

/// sum_i l_i (lambda+1)^i.
BigInteger position_code(const MultiIndex& l, int lambda);

struct NormalizedRepresentation {
    SourceRepresentation source;
    BigInteger scale;  // lambda!
    std::map<MultiIndex, BigInteger> rho;
    std::map<MultiIndex, BigInteger> kappa;
};

NormalizedRepresentation normalize(const SourceRepresentation& src);

struct EncodingConstants {
    SourceRepresentation source;
    BigInteger scale;
    std::uint64_t nu = 0;
    BigInteger gamma;
    Polynomial V;               // in k
    Polynomial K;               // in a, c
    std::vector<Polynomial> T;  // T_0..T_{2 nu}, in a, h1..h<delta>

    int lambda() const { return source.lambda; }
    int delta() const { return source.delta; }
    /// (lambda+1)^i, the digit position carrying h_i.
    std::uint64_t digit_position(int i) const;
    /// Sign of V's leading coefficient in k; equals the sign of V(K(a,c))
    /// for every a, c >= 0.
    int v_sign() const;
};

EncodingConstants build_constants(const NormalizedRepresentation& norm);

/// Convenience: validate, normalize and build.
EncodingConstants build_constants(int delta, const Polynomial& R);

/// B(h_1..h_delta, k) = sum h_i k^((lambda+1)^i) as a polynomial in h, k.
Polynomial coding_polynomial(int delta, int lambda);

BigInteger encode_B(const std::vector<BigInteger>& h, const BigInteger& k, int lambda);

struct Witness {
    BigInteger a;
    std::vector<BigInteger> h;
    BigInteger b;
    BigInteger c;
    BigInteger k;
};

Witness witness_encode(const EncodingConstants& consts, const BigInteger& a, const std::vector<BigInteger>& h);

/// h when b's base-K(a,c) digits sit only at positions (lambda+1)^i and are
/// all <= c; nothing otherwise.
std::optional<std::vector<BigInteger>> decode_witness(const EncodingConstants& consts, const BigInteger& a,
                                                      const BigInteger& b, const BigInteger& c);

/// Whether an integer z satisfies -k^nu < 2(V(k)(1+ak+b)^lambda - z k^(nu+1)) < k^nu
/// with k = K(a,c).
bool lemma1_decide(const EncodingConstants& consts, const BigInteger& a, const BigInteger& b, const BigInteger& c);

BigInteger evaluate_K(const EncodingConstants& consts, const BigInteger& a, const BigInteger& c);

/// k > |2 T_i(a, h)| for every i.
bool carrier_bounds_hold(const EncodingConstants& consts, const BigInteger& a, const std::vector<BigInteger>& h,
                         const BigInteger& k);

Point source_point(const BigInteger& a, const std::vector<BigInteger>& h);

/// Polynomials in (a, b, c) shared by both compiled forms.
struct DigitTestPolynomials {
    Polynomial K;       // gamma (2+a+c)^lambda
    Polynomial VK;      // V(K)
    Polynomial X;       // (1 + aK + b)^lambda
    Polynomial Mprime;  // V(K) (1 + aK + b)^lambda
};

DigitTestPolynomials digit_test_polynomials(const EncodingConstants& consts);

}  // namespace urep
