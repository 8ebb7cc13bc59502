#include "urep/form_two.hpp"

#include <algorithm>

#include <omp.h>

namespace urep {

namespace {

std::string indexed(const std::string& name, std::size_t i) { return name + std::to_string(i); }

struct Assembled {
    std::vector<Expr> partial_F;
    Expr W;
};

Assembled assemble(const std::vector<std::array<Expr, 3>>& gst, const Expr& f) {
    Assembled out;
    out.partial_F.push_back(Expr(0L));
    Expr W(1L);
    for (const auto& [g, s, t] : gst) {
        const Expr squares = pow(s, 2) + pow(t, 2);
        const Expr y = f - out.partial_F.back() - squares - Expr(2L);
        W = W * z_poly(g, s, t, y);
        out.partial_F.push_back(out.partial_F.back() + Expr(2L) * squares + Expr(4L));
    }
    out.W = W;
    return out;
}

BigInteger horner(const std::vector<BigInteger>& coefficients, const BigInteger& x) {
    BigInteger acc = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace

std::string family_name(TripleFamily family) {
    switch (family) {
        case TripleFamily::digit_test: return "digit-test";
        case TripleFamily::divisibility: return "divisibility";
        case TripleFamily::digit_window: return "digit-window";
        case TripleFamily::upper_bound: return "upper-bound";
        case TripleFamily::synthetic: return "synthetic";
    }
    return "unknown";
}

std::string IntervalTriple::label() const {
    if (family == TripleFamily::digit_window || family == TripleFamily::synthetic)
        return family_name(family) + "[" + std::to_string(index) + "]";
    return family_name(family);
}

BoundedUniversalTemplate bounded_universal_template(int epsilon) {
    std::vector<std::array<Expr, 3>> gst;
    for (int i = 1; i <= epsilon; ++i) {
        const auto n = static_cast<std::size_t>(i);
        gst.push_back({Expr::variable(indexed("g", n)), Expr::variable(indexed("s", n)),
                       Expr::variable(indexed("t", n))});
    }
    auto assembled = assemble(gst, Expr::variable("f"));
    return {epsilon, std::move(assembled.partial_F), std::move(assembled.W)};
}

std::vector<IntervalTriple> build_triples(const EncodingConstants& consts) {
    const auto polys = digit_test_polynomials(consts);
    const Polynomial& K = polys.K;
    const Polynomial b = Polynomial::variable("b");
    const Polynomial c = Polynomial::variable("c");
    const auto lambda = static_cast<std::uint64_t>(consts.lambda());
    const int delta = consts.delta();

    std::vector<IntervalTriple> triples;
    const Polynomial low = power(K, consts.nu);
    const Polynomial centre = 2 * polys.Mprime;
    triples.push_back({TripleFamily::digit_test, 0, 2 * (low * K), centre - low, centre + low});
    triples.push_back({TripleFamily::divisibility, 0, power(K, lambda + 1), b - 1, b + 1});
    for (int i = 1; i < delta; ++i) {
        triples.push_back({TripleFamily::digit_window, i, power(K, consts.digit_position(i + 1)),
                           b - (c + 1) * power(K, consts.digit_position(i)), b + 1});
    }
    const Polynomial top = (c + 1) * power(K, consts.digit_position(delta));
    triples.push_back({TripleFamily::upper_bound, 0, 2 * top, b - top, top - b});
    return triples;
}

FormTwo assemble_form2(std::vector<IntervalTriple> triples) {
    FormTwo f2;
    f2.triples = std::move(triples);
    f2.shape = bounded_universal_template(static_cast<int>(f2.triples.size()));
    std::vector<std::array<Expr, 3>> gst;
    for (const auto& tr : f2.triples) gst.push_back({Expr(tr.g), Expr(tr.s), Expr(tr.t)});
    auto assembled = assemble(gst, Expr::variable("f"));
    f2.partial_F = std::move(assembled.partial_F);
    f2.F = f2.partial_F.back();
    f2.W = std::move(assembled.W);
    const auto bound = degree_bound(f2.W, "f");
    if (!bound.exact) throw std::logic_error("assemble_form2: degree of W in f is not determined");
    f2.f_degree = bound.degree;
    return f2;
}

FormTwo compile_form2(const EncodingConstants& consts) {
    FormTwo f2 = assemble_form2(build_triples(consts));
    if (f2.epsilon() != static_cast<std::size_t>(consts.delta()) + 2 || f2.f_degree != 2 * f2.epsilon())
        throw std::logic_error("compile_form2: unexpected shape");
    return f2;
}

std::vector<IntervalTriple> synthetic_triples(const std::vector<std::array<long, 3>>& values) {
    std::vector<IntervalTriple> out;
    int i = 0;
    for (const auto& [g, s, t] : values) out.push_back({TripleFamily::synthetic, ++i, g, s, t});
    return out;
}

bool eval_triple_exists(const BigInteger& g, const BigInteger& s, const BigInteger& t) {
    if (sgn(g) <= 0) throw NonPositiveG("NonPositiveG: interval condition needs g > 0, got " + g.get_str());
    BigInteger z;
    mpz_fdiv_q(z.get_mpz_t(), s.get_mpz_t(), g.get_mpz_t());
    z += 1;
    return z * g < t;
}

bool eval_form2_naive(const FormTwo& f2, const Point& point, const BigInteger& cap) {
    const BigInteger bound = evaluate(f2.F, point);
    if (bound > cap)
        throw CapExceeded("CapExceeded: F = " + bound.get_str() + " exceeds cap " + cap.get_str());
    const Polynomial in_f = specialize(f2.W, point);
    std::vector<BigInteger> coefficients;
    for (const auto& coefficient : collect_by_variable(in_f, "f")) {
        if (!coefficient.is_constant()) throw UnboundVariable(coefficient.variables().front());
        coefficients.push_back(coefficient.constant_term());
    }
    for (BigInteger f = 0; f <= bound; ++f) {
        if (sgn(horner(coefficients, f)) <= 0) return false;
    }
    return true;
}

bool eval_form2_naive(const FormTwo& f2, const BigInteger& a, const BigInteger& b, const BigInteger& c,
                      const BigInteger& cap) {
    return eval_form2_naive(f2, Point{{"a", a}, {"b", b}, {"c", c}}, cap);
}

namespace {

bool structural_check(const BigInteger& g, const BigInteger& s, const BigInteger& t, const std::string& where) {
    if (sgn(g) <= 0 || t - s > g)
        throw TripleContractViolation("TripleContractViolation: " + where + " has g=" + g.get_str() +
                                      ", t-s=" + BigInteger(t - s).get_str());
    return eval_triple_exists(g, s, t);
}

}  // namespace

bool eval_form2_structural(const FormTwo& f2, const Point& point) {
    bool all = true;
    // Every triple is checked so contract violations surface even after a
    // failing condition.
    for (const auto& tr : f2.triples) {
        if (!structural_check(evaluate(tr.g, point), evaluate(tr.s, point), evaluate(tr.t, point), tr.label()))
            all = false;
    }
    return all;
}

bool eval_form2_structural(const FormTwo& f2, const BigInteger& a, const BigInteger& b, const BigInteger& c) {
    return eval_form2_structural(f2, Point{{"a", a}, {"b", b}, {"c", c}});
}

FormTwoEvaluator::FormTwoEvaluator(const FormTwo& f2, const BigInteger& a) : F_(f2.F) {
    const Point point{{"a", a}};
    for (const auto& tr : f2.triples)
        triples_.push_back({specialize(tr.g, point), specialize(tr.s, point), specialize(tr.t, point)});
}

bool FormTwoEvaluator::structural(const BigInteger& b, const BigInteger& c) const {
    const Point point{{"b", b}, {"c", c}};
    bool all = true;
    for (std::size_t i = 0; i < triples_.size(); ++i) {
        const auto& [g, s, t] = triples_[i];
        if (!structural_check(evaluate(g, point), evaluate(s, point), evaluate(t, point),
                              "triple " + std::to_string(i + 1)))
            all = false;
    }
    return all;
}

BigInteger FormTwoEvaluator::bound(const BigInteger& b, const BigInteger& c) const {
    BigInteger total = 0;
    const Point point{{"b", b}, {"c", c}};
    for (const auto& [g, s, t] : triples_) {
        const BigInteger sv = evaluate(s, point);
        const BigInteger tv = evaluate(t, point);
        total += 2 * sv * sv + 2 * tv * tv + 4;
    }
    return total;
}

IntervalEquivalence interval_equivalence(const BigInteger& g, const BigInteger& s, const BigInteger& t) {
    IntervalEquivalence out;
    out.exists_side = eval_triple_exists(g, s, t);
    const BigInteger reach = s * s + t * t + 2;
    out.universal_side = true;
    for (BigInteger y = -reach + 1; y <= reach; ++y) {
        if (!((y - 1) * g - s > 0 || t - y * g > 0)) {
            out.universal_side = false;
            break;
        }
    }
    return out;
}

namespace {

std::array<long, 3> sweep_point(std::size_t index, long range) {
    const auto width = static_cast<std::size_t>(2 * range + 1);
    const long t = static_cast<long>(index % width) - range;
    index /= width;
    const long s = static_cast<long>(index % width) - range;
    index /= width;
    return {static_cast<long>(index) + 1, s, t};
}

bool sweep_agrees(const std::array<long, 3>& p) {
    const auto r = interval_equivalence(p[0], p[1], p[2]);
    return r.exists_side == r.universal_side;
}

std::size_t sweep_size(long g_max, long range) {
    const auto width = static_cast<std::size_t>(2 * range + 1);
    return static_cast<std::size_t>(g_max) * width * width;
}

}  // namespace

IntervalSweep interval_sweep_serial(long g_max, long range) {
    IntervalSweep out;
    out.instances = sweep_size(g_max, range);
    for (std::size_t i = 0; i < out.instances; ++i) {
        const auto p = sweep_point(i, range);
        if (!sweep_agrees(p)) out.disagreements.push_back(p);
    }
    return out;
}

IntervalSweep interval_sweep(long g_max, long range, int threads) {
    IntervalSweep out;
    out.instances = sweep_size(g_max, range);
    const auto total = static_cast<std::int64_t>(out.instances);
    const int team = threads > 0 ? threads : omp_get_max_threads();
    std::vector<std::vector<std::array<long, 3>>> found(static_cast<std::size_t>(team));
#pragma omp parallel for num_threads(team) schedule(dynamic, 64)
    for (std::int64_t i = 0; i < total; ++i) {
        const auto p = sweep_point(static_cast<std::size_t>(i), range);
        if (!sweep_agrees(p)) found[static_cast<std::size_t>(omp_get_thread_num())].push_back(p);
    }
    for (auto& part : found) out.disagreements.insert(out.disagreements.end(), part.begin(), part.end());
    std::sort(out.disagreements.begin(), out.disagreements.end());
    return out;
}

}  // namespace urep
