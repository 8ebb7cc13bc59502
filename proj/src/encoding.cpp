#include "urep/encoding.hpp"

#include <algorithm>
#include <numeric>

namespace urep {

namespace {

constexpr std::uint64_t kMaxNu = 1u << 20;
// K^nu has degree lambda * nu in (a, c); beyond this the compiled forms do not
// fit in memory.
constexpr std::uint64_t kMaxDigitDegree = 1024;

BigInteger factorial(std::uint64_t n) {
    BigInteger out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

BigInteger int_pow(const BigInteger& base, std::uint64_t e) {
    BigInteger out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

std::uint64_t checked_pow(std::uint64_t base, int e) {
    std::uint64_t out = 1;
    for (int i = 0; i < e; ++i) {
        if (out > kMaxNu) throw EncodingError(EncodingError::Kind::too_large, "digit positions exceed supported size");
        out *= base;
    }
    return out;
}

Polynomial monomial(const std::string& var, std::uint64_t e) {
    if (e == 0) return Polynomial(1L);
    return Polynomial::from_terms({var}, {Term{{static_cast<std::uint32_t>(e)}, 1}});
}

}  // namespace

EncodingError::EncodingError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

std::string unknown_name(int i) { return "h" + std::to_string(i); }

std::vector<std::string> SourceRepresentation::variables() const {
    std::vector<std::string> vars{"a"};
    for (int i = 1; i <= delta; ++i) vars.push_back(unknown_name(i));
    return vars;
}

SourceRepresentation validate_source(int delta, const Polynomial& R) {
    if (delta < 1) throw EncodingError(EncodingError::Kind::no_unknowns, "NoUnknowns: delta must be at least 1");
    SourceRepresentation src{delta, 0, R};
    const auto allowed = src.variables();
    for (const auto& v : R.variables()) {
        if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
            throw EncodingError(EncodingError::Kind::foreign_variable,
                                "variable '" + v + "' is not among a, h1..h" + std::to_string(delta));
    }
    const auto degree = total_degree(R);
    if (degree == 0)
        throw EncodingError(EncodingError::Kind::degree_zero,
                            "DegreeZero: R must have total degree at least 1");
    src.lambda = static_cast<int>(degree);
    return src;
}

BigInteger kappa(const MultiIndex& alpha, int lambda) {
    const std::uint64_t sum = std::accumulate(alpha.begin(), alpha.end(), std::uint64_t{0});
    if (sum > static_cast<std::uint64_t>(lambda))
        throw EncodingError(EncodingError::Kind::index_overflow, "IndexOverflow: multi-index sum exceeds lambda");
    BigInteger denom = factorial(static_cast<std::uint64_t>(lambda) - sum);
    for (auto x : alpha) denom *= factorial(x);
    return factorial(static_cast<std::uint64_t>(lambda)) / denom;
}

BigInteger position_code(const MultiIndex& l, int lambda) {
    BigInteger out = 0;
    BigInteger place = 1;
    for (auto x : l) {
        out += place * x;
        place *= lambda + 1;
    }
    return out;
}

NormalizedRepresentation normalize(const SourceRepresentation& src) {
    NormalizedRepresentation norm{src, factorial(static_cast<std::uint64_t>(src.lambda)), {}, {}};
    for (const auto& term : src.R.terms_over(src.variables())) {
        const BigInteger k = kappa(term.exponents, src.lambda);
        BigInteger scaled = norm.scale * term.coefficient;
        // kappa divides lambda! for every admissible multi-index.
        if (!mpz_divisible_p(scaled.get_mpz_t(), k.get_mpz_t()))
            throw std::logic_error("normalize: kappa does not divide lambda! * coefficient");
        norm.rho[term.exponents] = scaled / k;
        norm.kappa[term.exponents] = k;
    }
    return norm;
}

std::uint64_t EncodingConstants::digit_position(int i) const {
    return checked_pow(static_cast<std::uint64_t>(lambda()) + 1, i);
}

int EncodingConstants::v_sign() const {
    if (V.is_zero()) return 0;
    // Terms are graded-lex descending, so the first has the top power of k.
    return sgn(V.terms().front().coefficient);
}

Polynomial coding_polynomial(int delta, int lambda) {
    Polynomial B;
    std::uint64_t position = 1;
    for (int i = 1; i <= delta; ++i) {
        position *= static_cast<std::uint64_t>(lambda) + 1;
        B += Polynomial::variable(unknown_name(i)) * monomial("k", position);
    }
    return B;
}

EncodingConstants build_constants(const NormalizedRepresentation& norm) {
    const auto& src = norm.source;
    const int lambda = src.lambda;
    const int delta = src.delta;

    EncodingConstants consts;
    consts.source = src;
    consts.scale = norm.scale;
    consts.nu = static_cast<std::uint64_t>(lambda) * checked_pow(static_cast<std::uint64_t>(lambda) + 1, delta);
    if (consts.nu > kMaxNu || consts.nu * static_cast<std::uint64_t>(lambda) > kMaxDigitDegree)
        throw EncodingError(EncodingError::Kind::too_large,
                            "TooLarge: lambda * nu = " + std::to_string(consts.nu * lambda) + " exceeds " +
                                std::to_string(kMaxDigitDegree));

    std::vector<Term> v_terms;
    for (const auto& [alpha, rho] : norm.rho) {
        const auto code = position_code(alpha, lambda).get_ui();
        v_terms.push_back(Term{{static_cast<std::uint32_t>(consts.nu - code)}, rho});
    }
    consts.V = Polynomial::from_terms({"k"}, std::move(v_terms));

    const Polynomial a = Polynomial::variable("a");
    const Polynomial k = Polynomial::variable("k");
    const Polynomial carrier = consts.V * power(1 + a * k + coding_polynomial(delta, lambda), lambda);
    if (degree_in(carrier, "k") > 2 * consts.nu)
        throw std::logic_error("build_constants: carrier degree in k exceeds 2 nu");
    consts.T = collect_by_variable(carrier, "k");
    consts.T.resize(2 * consts.nu + 1);

    if (!(consts.T[consts.nu] == norm.scale * src.R))
        throw std::logic_error("build_constants: T_nu differs from scale * R");
    BigInteger abs_sum = 0;
    for (const auto& t : consts.T) {
        if (total_degree(t) > static_cast<std::uint64_t>(lambda))
            throw std::logic_error("build_constants: carrier polynomial degree exceeds lambda");
        abs_sum += stats(t).abs_coefficient_sum;
    }
    consts.gamma = 2 * abs_sum + 1;
    consts.K = consts.gamma * power(2 + a + Polynomial::variable("c"), lambda);
    return consts;
}

EncodingConstants build_constants(int delta, const Polynomial& R) {
    return build_constants(normalize(validate_source(delta, R)));
}

BigInteger encode_B(const std::vector<BigInteger>& h, const BigInteger& k, int lambda) {
    BigInteger out = 0;
    std::uint64_t position = 1;
    for (const auto& hi : h) {
        position *= static_cast<std::uint64_t>(lambda) + 1;
        out += hi * int_pow(k, position);
    }
    return out;
}

BigInteger evaluate_K(const EncodingConstants& consts, const BigInteger& a, const BigInteger& c) {
    return consts.gamma * int_pow(2 + a + c, static_cast<std::uint64_t>(consts.lambda()));
}

Witness witness_encode(const EncodingConstants& consts, const BigInteger& a, const std::vector<BigInteger>& h) {
    if (h.size() != static_cast<std::size_t>(consts.delta()))
        throw std::invalid_argument("witness_encode: expected " + std::to_string(consts.delta()) + " unknowns");
    Witness w{a, h, 0, 0, 0};
    for (const auto& hi : h) {
        if (sgn(hi) < 0) throw std::invalid_argument("witness_encode: unknowns must be nonnegative");
        if (hi > w.c) w.c = hi;
    }
    w.k = evaluate_K(consts, a, w.c);
    w.b = encode_B(h, w.k, consts.lambda());
    return w;
}

std::optional<std::vector<BigInteger>> decode_witness(const EncodingConstants& consts, const BigInteger& a,
                                                      const BigInteger& b, const BigInteger& c) {
    if (sgn(b) < 0 || sgn(c) < 0) return std::nullopt;
    const BigInteger k = evaluate_K(consts, a, c);
    std::vector<BigInteger> h;
    BigInteger rest = b;
    BigInteger digit;
    std::uint64_t next = consts.digit_position(1);
    const std::uint64_t last = consts.digit_position(consts.delta());
    for (std::uint64_t position = 0; position <= last; ++position) {
        mpz_fdiv_qr(rest.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(), k.get_mpz_t());
        if (position == next) {
            if (digit > c) return std::nullopt;
            h.push_back(digit);
            next *= static_cast<std::uint64_t>(consts.lambda()) + 1;
        } else if (digit != 0) {
            return std::nullopt;
        }
    }
    if (rest != 0) return std::nullopt;
    return h;
}

bool lemma1_decide(const EncodingConstants& consts, const BigInteger& a, const BigInteger& b, const BigInteger& c) {
    const BigInteger k = evaluate_K(consts, a, c);
    const BigInteger m = evaluate(consts.V, {{"k", k}}) * int_pow(1 + a * k + b, consts.lambda());
    const BigInteger low = int_pow(k, consts.nu);
    const BigInteger modulus = low * k;
    BigInteger z;
    mpz_fdiv_q(z.get_mpz_t(), m.get_mpz_t(), modulus.get_mpz_t());
    for (int step = 0; step < 2; ++step, ++z) {
        const BigInteger r = 2 * (m - z * modulus);
        if (-low < r && r < low) return true;
    }
    return false;
}

bool carrier_bounds_hold(const EncodingConstants& consts, const BigInteger& a, const std::vector<BigInteger>& h,
                         const BigInteger& k) {
    const Point point = source_point(a, h);
    for (const auto& t : consts.T) {
        BigInteger twice = 2 * evaluate(t, point);
        if (!(k > abs(twice))) return false;
    }
    return true;
}

Point source_point(const BigInteger& a, const std::vector<BigInteger>& h) {
    Point p{{"a", a}};
    for (std::size_t i = 0; i < h.size(); ++i) p[unknown_name(static_cast<int>(i) + 1)] = h[i];
    return p;
}

DigitTestPolynomials digit_test_polynomials(const EncodingConstants& consts) {
    DigitTestPolynomials out;
    const Polynomial a = Polynomial::variable("a");
    const Polynomial b = Polynomial::variable("b");
    out.K = consts.K;
    out.VK = substitute(consts.V, {{"k", consts.K}});
    out.X = power(1 + a * consts.K + b, static_cast<std::uint64_t>(consts.lambda()));
    out.Mprime = out.VK * out.X;
    return out;
}

}  // namespace urep
