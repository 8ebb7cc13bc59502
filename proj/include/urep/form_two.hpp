#pragma once

// Compiled form  exists b, c: forall f <= F(a,b,c): W(a,b,c,f) > 0.
//
// Each interval condition  exists z [s < z g < t]  with g > 0 and t - s <= g
// holds iff Z(g,s,t,y) = ((y-1)g - s)(yg - t) > 0 for every y in
// (-s^2-t^2-2, s^2+t^2+2]. W shifts the windows of the conditions apart so a
// single bound F covers all of them:
//
//   F_i = sum_{mu <= i} (2 s_mu^2 + 2 t_mu^2 + 4),
//   W   = prod_i Z(g_i, s_i, t_i, f - F_{i-1} - s_i^2 - t_i^2 - 2).

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "urep/encoding.hpp"
#include "urep/expr.hpp"

namespace urep {

enum class TripleFamily {
    digit_test,
    divisibility,
    digit_window,
    upper_bound,
    synthetic,
};

std::string family_name(TripleFamily family);

struct IntervalTriple {
    TripleFamily family = TripleFamily::synthetic;
    int index = 0;
    Polynomial g;
    Polynomial s;
    Polynomial t;

    std::string label() const;
};

/// ((y-1)g - s)(yg - t) for values, polynomials or expressions.
template <typename T>
T z_poly(const T& g, const T& s, const T& t, const T& y) {
    return ((y - T(1L)) * g - s) * (y * g - t);
}

inline BigInteger z_poly(const BigInteger& g, const BigInteger& s, const BigInteger& t, const BigInteger& y) {
    return ((y - 1) * g - s) * (y * g - t);
}

/// F_epsilon and W_epsilon over symbols g1.., s1.., t1.., f.
struct BoundedUniversalTemplate {
    int epsilon = 0;
    std::vector<Expr> partial_F;  // F_0..F_epsilon
    Expr W;
};

BoundedUniversalTemplate bounded_universal_template(int epsilon);

struct FormTwo {
    std::vector<IntervalTriple> triples;
    BoundedUniversalTemplate shape;
    std::vector<Expr> partial_F;  // composed with the triples
    Expr F;
    Expr W;
    std::uint64_t f_degree = 0;  // exact degree of W in f

    std::size_t epsilon() const { return triples.size(); }
};

std::vector<IntervalTriple> build_triples(const EncodingConstants& consts);

/// Builds F and W over the given triples.
FormTwo assemble_form2(std::vector<IntervalTriple> triples);

FormTwo compile_form2(const EncodingConstants& consts);

/// Triples with constant g, s, t.
std::vector<IntervalTriple> synthetic_triples(const std::vector<std::array<long, 3>>& values);

class NonPositiveG : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TripleContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Whether some integer z has s < z g < t; requires g > 0.
bool eval_triple_exists(const BigInteger& g, const BigInteger& s, const BigInteger& t);

/// Enumerates f = 0..F(point); throws CapExceeded when F(point) > cap.
bool eval_form2_naive(const FormTwo& f2, const Point& point, const BigInteger& cap);
bool eval_form2_naive(const FormTwo& f2, const BigInteger& a, const BigInteger& b, const BigInteger& c,
                      const BigInteger& cap);

/// Conjunction of the interval conditions; throws TripleContractViolation when
/// g <= 0 or t - s > g at the point.
bool eval_form2_structural(const FormTwo& f2, const Point& point);
bool eval_form2_structural(const FormTwo& f2, const BigInteger& a, const BigInteger& b, const BigInteger& c);

/// Triples specialized at a fixed a.
class FormTwoEvaluator {
public:
    FormTwoEvaluator(const FormTwo& f2, const BigInteger& a);

    bool structural(const BigInteger& b, const BigInteger& c) const;
    BigInteger bound(const BigInteger& b, const BigInteger& c) const;

private:
    std::vector<std::array<Polynomial, 3>> triples_;
    Expr F_;
};

struct IntervalEquivalence {
    bool exists_side = false;
    bool universal_side = false;
};

/// Both sides of the single-condition equivalence, by enumeration.
IntervalEquivalence interval_equivalence(const BigInteger& g, const BigInteger& s, const BigInteger& t);

struct IntervalSweep {
    std::size_t instances = 0;
    std::vector<std::array<long, 3>> disagreements;  // sorted (g, s, t)
};

/// g in [1, g_max], s and t in [-range, range].
IntervalSweep interval_sweep(long g_max, long range, int threads = 0);
IntervalSweep interval_sweep_serial(long g_max, long range);

}  // namespace urep
