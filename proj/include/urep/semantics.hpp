#pragma once

// Ground truth by bounded search, the end-to-end equivalence suite tying a
// representation to both compiled forms, and growth statistics.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "urep/encoding.hpp"
#include "urep/form_one.hpp"
#include "urep/form_two.hpp"

namespace urep {

struct BundledSet {
    std::string name;
    int delta = 1;
    std::string expression;
};

/// even, squares, composites, full.
const std::vector<BundledSet>& bundled_corpus();
std::optional<BundledSet> find_bundled(const std::string& name);

struct CompiledSet {
    std::string name;
    std::string expression;
    EncodingConstants consts;
    FormOne form1;
    FormTwo form2;
};

CompiledSet compile_set(const std::string& name, int delta, const std::string& expression,
                        const FormOneOptions& options = {});
CompiledSet compile_set(const BundledSet& set, const FormOneOptions& options = {});

/// Some h with entries <= h_bound and R(a, h) = 0, first in lexicographic order.
std::optional<std::vector<BigInteger>> oracle_witness(const SourceRepresentation& src, const BigInteger& a,
                                                      unsigned h_bound);
bool oracle_membership(const SourceRepresentation& src, const BigInteger& a, unsigned h_bound);

struct SuiteConfig {
    unsigned a_max = 50;
    unsigned h_bound = 25;
    unsigned bc_samples = 64;
    BigInteger naive_cap = 1000000;
    int jobs = 0;  // 0: OpenMP default
    std::uint64_t seed = 20240917;
    unsigned witness_bound = 3;  // every tuple up to this bound is encoded and probed
    unsigned c_max = 8;          // random c in [0, c_max]
};

struct Counterexample {
    std::string form;  // "form1", "form2", "oracle"
    BigInteger a;
    BigInteger b;
    BigInteger c;
    std::string detail;

    friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct VerificationReport {
    std::string set_name;
    unsigned a_min = 0;
    unsigned a_max = 0;
    unsigned h_bound = 0;
    unsigned bc_samples = 0;
    BigInteger naive_cap;
    std::vector<unsigned> members;  // a with an oracle witness
    std::size_t points_checked = 0;
    std::size_t naive_comparisons = 0;
    std::vector<Counterexample> soundness_failures;
    std::vector<Counterexample> completeness_failures;
    std::vector<Counterexample> evaluator_disagreements;

    bool passed() const {
        return soundness_failures.empty() && completeness_failures.empty() && evaluator_disagreements.empty();
    }
};

/// Parallel over a; the reduction is in a-order, so the report is identical
/// to the serial one.
VerificationReport run_equivalence_suite(const CompiledSet& set, const SuiteConfig& config);
VerificationReport run_equivalence_suite_serial(const CompiledSet& set, const SuiteConfig& config);

nlohmann::ordered_json report_json(const VerificationReport& report);
std::string report_text(const VerificationReport& report, bool verbose = false);

struct DegreeCertificate {
    std::uint64_t upper = 0;  // structural
    std::uint64_t lower = 0;  // attained at a random specialization
    bool certified() const { return upper == lower; }
};

struct PolynomialGrowth {
    std::string label;
    std::map<std::string, std::uint64_t, std::less<>> degrees;
    std::uint64_t total_degree = 0;
    std::uint64_t term_count = 0;
    std::size_t max_coefficient_digits = 0;
};

struct GrowthRow {
    std::string set_name;
    int delta = 0;
    int lambda = 0;
    std::uint64_t nu = 0;
    std::size_t gamma_digits = 0;
    std::size_t epsilon = 0;
    std::vector<PolynomialGrowth> form1;  // P, D, Q of each conjunct
    std::vector<PolynomialGrowth> form2;  // g, s, t of each triple
    std::map<std::string, DegreeCertificate, std::less<>> W_degrees;  // a, b, c, f
    std::map<std::string, DegreeCertificate, std::less<>> F_degrees;  // a, b, c
    std::size_t W_coefficient_bound_digits = 0;  // digits of a bound on sum |coefficients|
};

GrowthRow growth_row(const CompiledSet& set, std::uint64_t seed = 1);
std::vector<GrowthRow> growth_report(const std::vector<CompiledSet>& sets, std::uint64_t seed = 1);

std::string growth_text(const std::vector<GrowthRow>& rows);
std::string growth_csv(const std::vector<GrowthRow>& rows);
nlohmann::ordered_json growth_json(const std::vector<GrowthRow>& rows);

}  // namespace urep
