#include "urep/semantics.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <omp.h>

#include "urep/parser.hpp"

namespace urep {

namespace {

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

BigInteger int_pow(const BigInteger& base, std::uint64_t e) {
    BigInteger out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

std::string tuple_text(const std::vector<BigInteger>& h) {
    std::string out = "(";
    for (std::size_t i = 0; i < h.size(); ++i) out += (i ? ", " : "") + h[i].get_str();
    return out + ")";
}

struct PerA {
    bool member = false;
    std::size_t points = 0;
    std::size_t naive = 0;
    std::vector<Counterexample> soundness;
    std::vector<Counterexample> completeness;
    std::vector<Counterexample> disagreements;
};

using Candidates = std::set<std::pair<BigInteger, BigInteger>>;

void add_witness_neighbourhood(Candidates& out, const EncodingConstants& consts, const Witness& w) {
    const std::uint64_t top = consts.digit_position(consts.delta());
    out.insert({w.b, w.c});
    BigInteger step = 1;
    for (std::uint64_t j = 0; j <= top; ++j, step *= w.k) {
        out.insert({w.b + step, w.c});
        if (w.b >= step) out.insert({w.b - step, w.c});
    }
    out.insert({w.b, w.c + 1});
    if (w.c > 0) out.insert({w.b, w.c - 1});
    // the same tuple coded with a larger c is still a witness
    const BigInteger wider = w.c + 1;
    out.insert({encode_B(w.h, evaluate_K(consts, w.a, wider), consts.lambda()), wider});
}

void add_random(Candidates& out, const EncodingConstants& consts, const BigInteger& a, const SuiteConfig& config,
                gmp_randclass& rng) {
    const std::uint64_t top = consts.digit_position(consts.delta());
    for (unsigned i = 0; i < config.bc_samples; ++i) {
        const BigInteger c = rng.get_z_range(config.c_max + 1);
        const BigInteger k = evaluate_K(consts, a, c);
        BigInteger b = 0;
        if (i % 2 == 0) {
            for (int d = 1; d <= consts.delta(); ++d)
                b += rng.get_z_range(c + 2) * int_pow(k, consts.digit_position(d));
            if (BigInteger(rng.get_z_bits(1)) == 1) {
                const auto j = BigInteger(rng.get_z_range(BigInteger(top + 1))).get_ui();
                b += (rng.get_z_range(k - 1) + 1) * int_pow(k, j);
            }
        } else {
            b = rng.get_z_range((c + 2) * int_pow(k, top));
        }
        out.insert({b, c});
    }
}

PerA check_a(const CompiledSet& set, const SuiteConfig& config, unsigned a_value) {
    PerA result;
    const EncodingConstants& consts = set.consts;
    const BigInteger a = a_value;
    const FormOneEvaluator form1(set.form1, a);
    const FormTwoEvaluator form2(set.form2, a);

    Candidates candidates;
    const auto witness = oracle_witness(consts.source, a, config.h_bound);
    if (witness) {
        result.member = true;
        const Witness w = witness_encode(consts, a, *witness);
        const std::string detail = "encoded witness h=" + tuple_text(*witness) + " rejected";
        if (!form1(w.b, w.c)) result.soundness.push_back({"form1", a, w.b, w.c, detail});
        try {
            if (!form2.structural(w.b, w.c)) result.soundness.push_back({"form2", a, w.b, w.c, detail});
        } catch (const TripleContractViolation& e) {
            result.soundness.push_back({"form2", a, w.b, w.c, e.what()});
        }
        add_witness_neighbourhood(candidates, consts, w);
    }
    for_each_tuple(consts.delta(), config.witness_bound, [&](const std::vector<BigInteger>& h) {
        add_witness_neighbourhood(candidates, consts, witness_encode(consts, a, h));
        return false;
    });
    for (long b = 0; b <= 1; ++b)
        for (long c = 0; c <= 1; ++c) candidates.insert({b, c});
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(BigInteger(std::to_string(config.seed ^ fnv1a(set.name))) * 1000003 + a);
    add_random(candidates, consts, a, config, rng);

    for (const auto& [b, c] : candidates) {
        ++result.points;
        const auto decoded = decode_witness(consts, a, b, c);
        std::string why;
        bool valid = false;
        if (!decoded) {
            why = "b is not a digit coding bounded by c";
        } else {
            const BigInteger r = evaluate(consts.source.R, source_point(a, *decoded));
            valid = r == 0;
            if (!valid) why = "decoded h=" + tuple_text(*decoded) + " gives R=" + r.get_str();
        }
        const int failed = form1.first_failure(b, c);
        const bool accept1 = failed < 0;
        if (accept1 && !valid) result.completeness.push_back({"form1", a, b, c, "accepted but " + why});
        if (!accept1 && valid)
            result.soundness.push_back({"form1", a, b, c,
                                        "valid coding of h=" + tuple_text(*decoded) + " rejected by " +
                                            set.form1.conjuncts[static_cast<std::size_t>(failed)].label()});
        bool accept2 = false;
        try {
            accept2 = form2.structural(b, c);
        } catch (const TripleContractViolation& e) {
            result.completeness.push_back({"form2", a, b, c, e.what()});
            continue;
        }
        if (accept2 && !valid) result.completeness.push_back({"form2", a, b, c, "accepted but " + why});
        if (!accept2 && valid)
            result.soundness.push_back({"form2", a, b, c, "valid coding of h=" + tuple_text(*decoded) + " rejected"});
        if (form2.bound(b, c) <= config.naive_cap) {
            ++result.naive;
            const bool naive = eval_form2_naive(set.form2, a, b, c, config.naive_cap);
            if (naive != accept2)
                result.disagreements.push_back(
                    {"form2", a, b, c,
                     std::string("naive ") + (naive ? "accepts" : "rejects") + ", structural " +
                         (accept2 ? "accepts" : "rejects")});
        }
    }
    return result;
}

VerificationReport reduce(const CompiledSet& set, const SuiteConfig& config, std::vector<PerA>& parts) {
    VerificationReport report;
    report.set_name = set.name;
    report.a_max = config.a_max;
    report.h_bound = config.h_bound;
    report.bc_samples = config.bc_samples;
    report.naive_cap = config.naive_cap;
    for (unsigned a = 0; a < parts.size(); ++a) {
        auto& part = parts[a];
        if (part.member) report.members.push_back(a);
        report.points_checked += part.points;
        report.naive_comparisons += part.naive;
        auto append = [](auto& into, auto& from) { into.insert(into.end(), from.begin(), from.end()); };
        append(report.soundness_failures, part.soundness);
        append(report.completeness_failures, part.completeness);
        append(report.evaluator_disagreements, part.disagreements);
    }
    return report;
}

}  // namespace

const std::vector<BundledSet>& bundled_corpus() {
    static const std::vector<BundledSet> corpus{
        {"even", 1, "a - 2*h1"},
        {"squares", 1, "a - h1^2"},
        {"composites", 2, "(h1+2)*(h2+2) - a"},
        {"full", 1, "h1"},
    };
    return corpus;
}

std::optional<BundledSet> find_bundled(const std::string& name) {
    for (const auto& set : bundled_corpus())
        if (set.name == name) return set;
    return std::nullopt;
}

CompiledSet compile_set(const std::string& name, int delta, const std::string& expression,
                        const FormOneOptions& options) {
    CompiledSet set;
    set.name = name;
    set.expression = expression;
    set.consts = build_constants(delta, parse_polynomial(expression, delta));
    set.form1 = compile_form1(set.consts, options);
    set.form2 = compile_form2(set.consts);
    return set;
}

CompiledSet compile_set(const BundledSet& set, const FormOneOptions& options) {
    return compile_set(set.name, set.delta, set.expression, options);
}

std::optional<std::vector<BigInteger>> oracle_witness(const SourceRepresentation& src, const BigInteger& a,
                                                      unsigned h_bound) {
    std::optional<std::vector<BigInteger>> found;
    for_each_tuple(src.delta, h_bound, [&](const std::vector<BigInteger>& h) {
        if (evaluate(src.R, source_point(a, h)) != 0) return false;
        found = h;
        return true;
    });
    return found;
}

bool oracle_membership(const SourceRepresentation& src, const BigInteger& a, unsigned h_bound) {
    return oracle_witness(src, a, h_bound).has_value();
}

VerificationReport run_equivalence_suite_serial(const CompiledSet& set, const SuiteConfig& config) {
    std::vector<PerA> parts(config.a_max + 1);
    for (unsigned a = 0; a <= config.a_max; ++a) parts[a] = check_a(set, config, a);
    return reduce(set, config, parts);
}

VerificationReport run_equivalence_suite(const CompiledSet& set, const SuiteConfig& config) {
    std::vector<PerA> parts(config.a_max + 1);
    const int team = config.jobs > 0 ? config.jobs : omp_get_max_threads();
    const auto count = static_cast<std::int64_t>(parts.size());
#pragma omp parallel for num_threads(team) schedule(dynamic, 1)
    for (std::int64_t a = 0; a < count; ++a)
        parts[static_cast<std::size_t>(a)] = check_a(set, config, static_cast<unsigned>(a));
    return reduce(set, config, parts);
}

namespace {

nlohmann::ordered_json counterexamples_json(const std::vector<Counterexample>& list) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& ce : list)
        out.push_back({{"form", ce.form},
                       {"a", ce.a.get_str()},
                       {"b", ce.b.get_str()},
                       {"c", ce.c.get_str()},
                       {"detail", ce.detail}});
    return out;
}

void counterexamples_text(std::ostringstream& out, const char* title, const std::vector<Counterexample>& list,
                          bool verbose) {
    out << title << ": " << list.size() << '\n';
    const std::size_t shown = verbose ? list.size() : std::min<std::size_t>(list.size(), 5);
    for (std::size_t i = 0; i < shown; ++i) {
        const auto& ce = list[i];
        out << "  " << ce.form << " a=" << ce.a << " b=" << ce.b << " c=" << ce.c << ": " << ce.detail << '\n';
    }
    if (shown < list.size()) out << "  ... " << list.size() - shown << " more\n";
}

}  // namespace

nlohmann::ordered_json report_json(const VerificationReport& report) {
    return {{"set", report.set_name},
            {"a_range", {report.a_min, report.a_max}},
            {"h_bound", report.h_bound},
            {"bc_samples", report.bc_samples},
            {"naive_cap", report.naive_cap.get_str()},
            {"members", report.members},
            {"points_checked", report.points_checked},
            {"naive_comparisons", report.naive_comparisons},
            {"soundness_failures", counterexamples_json(report.soundness_failures)},
            {"completeness_failures", counterexamples_json(report.completeness_failures)},
            {"evaluator_disagreements", counterexamples_json(report.evaluator_disagreements)},
            {"passed", report.passed()}};
}

std::string report_text(const VerificationReport& report, bool verbose) {
    std::ostringstream out;
    out << "set " << report.set_name << ": a in [" << report.a_min << ", " << report.a_max
        << "], h-bound " << report.h_bound << ", " << report.bc_samples << " random (b,c) per a, naive cap "
        << report.naive_cap << '\n';
    out << "members: " << report.members.size() << '\n';
    out << "points checked: " << report.points_checked << '\n';
    out << "naive comparisons: " << report.naive_comparisons << '\n';
    counterexamples_text(out, "soundness failures", report.soundness_failures, verbose);
    counterexamples_text(out, "completeness failures", report.completeness_failures, verbose);
    counterexamples_text(out, "evaluator disagreements", report.evaluator_disagreements, verbose);
    out << (report.passed() ? "PASS" : "FAIL") << '\n';
    return out.str();
}

namespace {

PolynomialGrowth polynomial_growth(const std::string& label, const Polynomial& p) {
    const auto s = stats(p);
    return {label, s.degree_per_variable, s.total_degree, s.term_count, decimal_digits(s.max_abs_coefficient)};
}

DegreeCertificate certify(const Expr& e, const std::string& var, gmp_randclass& rng) {
    DegreeCertificate out;
    out.upper = degree_bound(e, var).degree;
    Point point;
    for (const auto& v : expr_variables(e))
        if (v != var) point[v] = rng.get_z_bits(16) + 2;
    out.lower = degree_in(specialize(e, point), var);
    return out;
}

}  // namespace

GrowthRow growth_row(const CompiledSet& set, std::uint64_t seed) {
    GrowthRow row;
    row.set_name = set.name;
    row.delta = set.consts.delta();
    row.lambda = set.consts.lambda();
    row.nu = set.consts.nu;
    row.gamma_digits = decimal_digits(set.consts.gamma);
    row.epsilon = set.form1.epsilon();
    for (const auto& conj : set.form1.conjuncts) {
        row.form1.push_back(polynomial_growth(conj.label() + ".P", conj.P));
        row.form1.push_back(polynomial_growth(conj.label() + ".D", conj.D));
        row.form1.push_back(polynomial_growth(conj.label() + ".Q", conj.Q));
    }
    for (const auto& tr : set.form2.triples) {
        row.form2.push_back(polynomial_growth(tr.label() + ".g", tr.g));
        row.form2.push_back(polynomial_growth(tr.label() + ".s", tr.s));
        row.form2.push_back(polynomial_growth(tr.label() + ".t", tr.t));
    }
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(BigInteger(std::to_string(seed ^ fnv1a(set.name))));
    for (const char* v : {"a", "b", "c", "f"}) row.W_degrees[v] = certify(set.form2.W, v, rng);
    for (const char* v : {"a", "b", "c"}) row.F_degrees[v] = certify(set.form2.F, v, rng);
    row.W_coefficient_bound_digits = decimal_digits(abs_sum_bound(set.form2.W));
    return row;
}

std::vector<GrowthRow> growth_report(const std::vector<CompiledSet>& sets, std::uint64_t seed) {
    std::vector<GrowthRow> rows;
    for (const auto& set : sets) rows.push_back(growth_row(set, seed));
    return rows;
}

namespace {

std::string degree_cell(const DegreeCertificate& d) {
    return d.certified() ? std::to_string(d.upper) : std::to_string(d.lower) + ".." + std::to_string(d.upper);
}

std::size_t max_terms(const std::vector<PolynomialGrowth>& list) {
    std::size_t out = 0;
    for (const auto& g : list) out = std::max<std::size_t>(out, g.term_count);
    return out;
}

std::size_t max_digits(const std::vector<PolynomialGrowth>& list) {
    std::size_t out = 0;
    for (const auto& g : list) out = std::max(out, g.max_coefficient_digits);
    return out;
}

const std::vector<std::string> kCsvColumns{
    "set",         "delta",       "lambda",       "nu",           "gamma_digits",   "epsilon",
    "W_deg_f",     "W_deg_a",     "W_deg_b",      "W_deg_c",      "F_deg_a",        "F_deg_b",
    "F_deg_c",     "form1_max_terms", "form1_max_coeff_digits", "form2_max_terms", "form2_max_coeff_digits",
    "W_coeff_bound_digits"};

std::vector<std::string> csv_cells(const GrowthRow& row) {
    return {row.set_name,
            std::to_string(row.delta),
            std::to_string(row.lambda),
            std::to_string(row.nu),
            std::to_string(row.gamma_digits),
            std::to_string(row.epsilon),
            degree_cell(row.W_degrees.at("f")),
            degree_cell(row.W_degrees.at("a")),
            degree_cell(row.W_degrees.at("b")),
            degree_cell(row.W_degrees.at("c")),
            degree_cell(row.F_degrees.at("a")),
            degree_cell(row.F_degrees.at("b")),
            degree_cell(row.F_degrees.at("c")),
            std::to_string(max_terms(row.form1)),
            std::to_string(max_digits(row.form1)),
            std::to_string(max_terms(row.form2)),
            std::to_string(max_digits(row.form2)),
            std::to_string(row.W_coefficient_bound_digits)};
}

}  // namespace

std::string growth_csv(const std::vector<GrowthRow>& rows) {
    std::ostringstream out;
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) out << (i ? "," : "") << kCsvColumns[i];
    out << '\n';
    for (const auto& row : rows) {
        const auto cells = csv_cells(row);
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << '\n';
    }
    return out.str();
}

std::string growth_text(const std::vector<GrowthRow>& rows) {
    std::vector<std::vector<std::string>> table{kCsvColumns};
    for (const auto& row : rows) table.push_back(csv_cells(row));
    std::vector<std::size_t> width(kCsvColumns.size(), 0);
    for (const auto& line : table)
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    std::ostringstream out;
    for (const auto& line : table) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            out << line[i];
            if (i + 1 < line.size()) out << std::string(width[i] - line[i].size() + 2, ' ');
        }
        out << '\n';
    }
    return out.str();
}

nlohmann::ordered_json growth_json(const std::vector<GrowthRow>& rows) {
    auto out = nlohmann::ordered_json::array();
    auto degrees = [](const std::map<std::string, DegreeCertificate, std::less<>>& m) {
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        for (const auto& [v, d] : m) j[v] = {{"upper", d.upper}, {"lower", d.lower}, {"certified", d.certified()}};
        return j;
    };
    auto polys = [](const std::vector<PolynomialGrowth>& list) {
        auto j = nlohmann::ordered_json::array();
        for (const auto& g : list) {
            nlohmann::ordered_json deg = nlohmann::ordered_json::object();
            for (const auto& [v, d] : g.degrees) deg[v] = d;
            j.push_back({{"label", g.label},
                         {"degrees", deg},
                         {"total_degree", g.total_degree},
                         {"terms", g.term_count},
                         {"max_coefficient_digits", g.max_coefficient_digits}});
        }
        return j;
    };
    for (const auto& row : rows) {
        out.push_back({{"set", row.set_name},
                       {"delta", row.delta},
                       {"lambda", row.lambda},
                       {"nu", row.nu},
                       {"gamma_digits", row.gamma_digits},
                       {"epsilon", row.epsilon},
                       {"W_degrees", degrees(row.W_degrees)},
                       {"F_degrees", degrees(row.F_degrees)},
                       {"W_coefficient_bound_digits", row.W_coefficient_bound_digits},
                       {"form1", polys(row.form1)},
                       {"form2", polys(row.form2)}});
    }
    return out;
}

}  // namespace urep
