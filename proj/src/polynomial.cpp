#include "urep/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "urep/kernels.hpp"

namespace urep {

namespace {

std::pair<std::string_view, long long> split_name(std::string_view name) {
    std::size_t cut = name.size();
    while (cut > 0 && std::isdigit(static_cast<unsigned char>(name[cut - 1]))) --cut;
    if (cut == name.size() || cut == 0) return {name, -1};
    long long suffix = 0;
    for (std::size_t i = cut; i < name.size(); ++i) suffix = suffix * 10 + (name[i] - '0');
    return {name.substr(0, cut), suffix};
}

std::uint64_t degree_of(const ExponentVector& e) {
    return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

std::vector<std::string> merged_variables(const std::vector<std::string>& lhs,
                                          const std::vector<std::string>& rhs) {
    std::vector<std::string> out;
    out.reserve(lhs.size() + rhs.size());
    std::set_union(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), std::back_inserter(out),
                   [](const std::string& x, const std::string& y) { return variable_less(x, y); });
    return out;
}

// Sorts, merges duplicates, drops zeros and unused variables.
Polynomial canonical(std::vector<std::string> vars, std::vector<Term> terms);

void append_monomial(std::ostringstream& out, const std::vector<std::string>& vars,
                     const ExponentVector& e, bool latex) {
    bool first = true;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) out << (latex ? " " : "*");
        first = false;
        if (latex) {
            if (vars[i].size() > 1 && std::isdigit(static_cast<unsigned char>(vars[i].back()))) {
                auto [prefix, suffix] = split_name(vars[i]);
                out << prefix << "_{" << suffix << "}";
            } else {
                out << vars[i];
            }
            if (e[i] != 1) out << "^{" << e[i] << "}";
        } else {
            out << vars[i];
            if (e[i] != 1) out << "^" << e[i];
        }
    }
}

std::string render(const Polynomial& p, bool latex) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& term : p.terms()) {
        const bool negative = sgn(term.coefficient) < 0;
        if (first) {
            if (negative) out << "-";
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        const BigInteger magnitude = abs(term.coefficient);
        const bool has_monomial = degree_of(term.exponents) > 0;
        if (!has_monomial || magnitude != 1) {
            out << magnitude.get_str();
            if (has_monomial) out << (latex ? " " : "*");
        }
        append_monomial(out, p.variables(), term.exponents, latex);
    }
    return out.str();
}

}  // namespace

bool variable_less(std::string_view lhs, std::string_view rhs) {
    auto [lp, ls] = split_name(lhs);
    auto [rp, rs] = split_name(rhs);
    if (lp != rp) return lp < rp;
    if (ls != rs) return ls < rs;
    return lhs < rhs;
}

bool graded_lex_greater(const ExponentVector& lhs, const ExponentVector& rhs) {
    const auto dl = degree_of(lhs);
    const auto dr = degree_of(rhs);
    if (dl != dr) return dl > dr;
    return std::lexicographical_compare(rhs.begin(), rhs.end(), lhs.begin(), lhs.end());
}

Polynomial::Polynomial(long value) : Polynomial(BigInteger(value)) {}

Polynomial::Polynomial(const BigInteger& value) {
    if (value != 0) terms_.push_back(Term{{}, value});
}

Polynomial Polynomial::variable(const std::string& name) {
    Polynomial p;
    p.variables_ = {name};
    p.terms_.push_back(Term{{1}, 1});
    return p;
}

Polynomial Polynomial::from_terms(std::vector<std::string> variables, std::vector<Term> terms) {
    return canonical(std::move(variables), std::move(terms));
}

Polynomial Polynomial::from_canonical_terms(std::vector<std::string> variables, std::vector<Term> terms) {
    Polynomial p;
    p.variables_ = std::move(variables);
    p.terms_ = std::move(terms);
    return p;
}

namespace {

Polynomial canonical(std::vector<std::string> vars, std::vector<Term> terms) {
    // Reorder variables canonically, permuting exponent columns to match.
    std::vector<std::size_t> order(vars.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return variable_less(vars[x], vars[y]); });
    const bool sorted = std::is_sorted(order.begin(), order.end());
    if (!sorted) {
        std::vector<std::string> reordered;
        for (auto i : order) reordered.push_back(vars[i]);
        for (auto& t : terms) {
            ExponentVector e(order.size());
            for (std::size_t j = 0; j < order.size(); ++j) e[j] = t.exponents[order[j]];
            t.exponents = std::move(e);
        }
        vars = std::move(reordered);
    }

    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return graded_lex_greater(x.exponents, y.exponents); });
    std::vector<Term> merged;
    merged.reserve(terms.size());
    for (auto& t : terms) {
        if (!merged.empty() && merged.back().exponents == t.exponents) {
            merged.back().coefficient += t.coefficient;
        } else {
            if (!merged.empty() && merged.back().coefficient == 0) merged.pop_back();
            merged.push_back(std::move(t));
        }
    }
    if (!merged.empty() && merged.back().coefficient == 0) merged.pop_back();

    std::vector<bool> used(vars.size(), false);
    for (const auto& t : merged)
        for (std::size_t j = 0; j < vars.size(); ++j)
            if (t.exponents[j] != 0) used[j] = true;

    if (std::find(used.begin(), used.end(), false) != used.end()) {
        std::vector<std::string> kept;
        for (std::size_t j = 0; j < vars.size(); ++j)
            if (used[j]) kept.push_back(vars[j]);
        for (auto& t : merged) {
            ExponentVector e;
            e.reserve(kept.size());
            for (std::size_t j = 0; j < vars.size(); ++j)
                if (used[j]) e.push_back(t.exponents[j]);
            t.exponents = std::move(e);
        }
        vars = std::move(kept);
    }
    // Pruning columns keeps the graded-lex order intact.
    return Polynomial::from_canonical_terms(std::move(vars), std::move(merged));
}

}  // namespace

bool Polynomial::contains(std::string_view var) const {
    return std::find(variables_.begin(), variables_.end(), var) != variables_.end();
}

BigInteger Polynomial::constant_term() const {
    if (!terms_.empty() && degree_of(terms_.back().exponents) == 0) return terms_.back().coefficient;
    return 0;
}

std::vector<Term> Polynomial::terms_over(const std::vector<std::string>& ambient) const {
    std::vector<std::size_t> slot(variables_.size());
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        auto it = std::find(ambient.begin(), ambient.end(), variables_[i]);
        if (it == ambient.end()) throw std::logic_error("terms_over: ambient set lacks " + variables_[i]);
        slot[i] = static_cast<std::size_t>(it - ambient.begin());
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        ExponentVector e(ambient.size(), 0);
        for (std::size_t i = 0; i < slot.size(); ++i) e[slot[i]] = t.exponents[i];
        out.push_back(Term{std::move(e), t.coefficient});
    }
    return out;
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (auto& t : out.terms_) t.coefficient = -t.coefficient;
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    if (rhs.is_zero()) return *this;
    if (is_zero()) return *this = rhs;
    auto vars = merged_variables(variables_, rhs.variables_);
    auto lt = terms_over(vars);
    auto rt = rhs.terms_over(vars);
    std::vector<Term> out;
    out.reserve(lt.size() + rt.size());
    std::size_t i = 0, j = 0;
    while (i < lt.size() || j < rt.size()) {
        if (j == rt.size() || (i < lt.size() && graded_lex_greater(lt[i].exponents, rt[j].exponents))) {
            out.push_back(std::move(lt[i++]));
        } else if (i == lt.size() || graded_lex_greater(rt[j].exponents, lt[i].exponents)) {
            out.push_back(std::move(rt[j++]));
        } else {
            lt[i].coefficient += rt[j].coefficient;
            if (lt[i].coefficient != 0) out.push_back(std::move(lt[i]));
            ++i;
            ++j;
        }
    }
    return *this = canonical(std::move(vars), std::move(out));
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) { return *this += -rhs; }

Polynomial& Polynomial::operator*=(const Polynomial& rhs) { return *this = *this * rhs; }

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
    return kernels::multiply_parallel(lhs, rhs);
}

bool operator==(const Polynomial& lhs, const Polynomial& rhs) {
    if (lhs.variables_ != rhs.variables_ || lhs.terms_.size() != rhs.terms_.size()) return false;
    for (std::size_t i = 0; i < lhs.terms_.size(); ++i) {
        if (lhs.terms_[i].exponents != rhs.terms_[i].exponents) return false;
        if (lhs.terms_[i].coefficient != rhs.terms_[i].coefficient) return false;
    }
    return true;
}

std::string Polynomial::to_string() const { return render(*this, false); }
std::string Polynomial::to_latex() const { return render(*this, true); }

Polynomial arith(ArithOp op, const Polynomial& lhs, const Polynomial& rhs) {
    switch (op) {
        case ArithOp::add: return lhs + rhs;
        case ArithOp::subtract: return lhs - rhs;
        case ArithOp::multiply: return lhs * rhs;
    }
    throw std::logic_error("arith: unknown op");
}

Polynomial power(const Polynomial& base, std::uint64_t exponent) {
    Polynomial result(1);
    Polynomial square = base;
    while (exponent > 0) {
        if (exponent & 1u) result *= square;
        exponent >>= 1u;
        if (exponent > 0) square *= square;
    }
    return result;
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial, std::less<>>& bindings) {
    std::vector<std::string> free_vars;
    std::vector<std::string> vars;
    for (const auto& v : p.variables()) {
        auto it = bindings.find(v);
        if (it == bindings.end()) {
            free_vars.push_back(v);
            vars = merged_variables(vars, {v});
        } else {
            vars = merged_variables(vars, it->second.variables());
        }
    }
    if (free_vars.size() == p.variables().size()) return p;

    std::map<std::pair<std::size_t, std::uint32_t>, Polynomial> powers;
    auto power_of = [&](std::size_t var, std::uint32_t e) -> const Polynomial& {
        auto key = std::make_pair(var, e);
        auto it = powers.find(key);
        if (it == powers.end())
            it = powers.emplace(key, power(bindings.find(p.variables()[var])->second, e)).first;
        return it->second;
    };

    std::vector<Term> out;
    const auto& pv = p.variables();
    for (const auto& term : p.terms()) {
        Polynomial factor(term.coefficient);
        std::vector<std::string> mono_vars;
        std::vector<Term> mono{Term{{}, 1}};
        for (std::size_t i = 0; i < pv.size(); ++i) {
            if (term.exponents[i] == 0) continue;
            if (bindings.count(pv[i])) {
                factor *= power_of(i, term.exponents[i]);
            } else {
                mono_vars.push_back(pv[i]);
                mono[0].exponents.push_back(term.exponents[i]);
            }
        }
        factor *= Polynomial::from_terms(std::move(mono_vars), std::move(mono));
        auto aligned = factor.terms_over(vars);
        std::move(aligned.begin(), aligned.end(), std::back_inserter(out));
    }
    return Polynomial::from_terms(std::move(vars), std::move(out));
}

namespace {

std::vector<std::vector<BigInteger>> power_tables(const Polynomial& p, const std::vector<const BigInteger*>& values) {
    const auto& vars = p.variables();
    std::vector<std::uint32_t> max_exp(vars.size(), 0);
    for (const auto& t : p.terms())
        for (std::size_t i = 0; i < vars.size(); ++i) max_exp[i] = std::max(max_exp[i], t.exponents[i]);
    std::vector<std::vector<BigInteger>> tables(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (values[i] == nullptr) continue;
        tables[i].resize(max_exp[i] + 1);
        tables[i][0] = 1;
        for (std::uint32_t e = 1; e <= max_exp[i]; ++e) tables[i][e] = tables[i][e - 1] * *values[i];
    }
    return tables;
}

}  // namespace

BigInteger evaluate(const Polynomial& p, const Point& point) {
    const auto& vars = p.variables();
    std::vector<const BigInteger*> values(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
        auto it = point.find(vars[i]);
        if (it == point.end()) throw UnboundVariable(vars[i]);
        values[i] = &it->second;
    }
    const auto tables = power_tables(p, values);
    BigInteger sum = 0;
    BigInteger product;
    for (const auto& t : p.terms()) {
        product = t.coefficient;
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (t.exponents[i] != 0) product *= tables[i][t.exponents[i]];
        sum += product;
    }
    return sum;
}

Polynomial specialize(const Polynomial& p, const Point& point) {
    const auto& vars = p.variables();
    std::vector<const BigInteger*> values(vars.size(), nullptr);
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        auto it = point.find(vars[i]);
        if (it != point.end()) {
            values[i] = &it->second;
        } else {
            rest.push_back(vars[i]);
        }
    }
    if (rest.size() == vars.size()) return p;
    const auto tables = power_tables(p, values);
    std::vector<Term> out;
    out.reserve(p.terms().size());
    for (const auto& t : p.terms()) {
        Term r{{}, t.coefficient};
        r.exponents.reserve(rest.size());
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (values[i] != nullptr) {
                if (t.exponents[i] != 0) r.coefficient *= tables[i][t.exponents[i]];
            } else {
                r.exponents.push_back(t.exponents[i]);
            }
        }
        out.push_back(std::move(r));
    }
    return Polynomial::from_terms(std::move(rest), std::move(out));
}

std::vector<Polynomial> collect_by_variable(const Polynomial& p, std::string_view v) {
    const auto& vars = p.variables();
    auto it = std::find(vars.begin(), vars.end(), v);
    if (it == vars.end()) return {p};
    const auto slot = static_cast<std::size_t>(it - vars.begin());
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (i != slot) rest.push_back(vars[i]);
    std::vector<std::vector<Term>> buckets(degree_in(p, v) + 1);
    for (const auto& t : p.terms()) {
        Term r{{}, t.coefficient};
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (i != slot) r.exponents.push_back(t.exponents[i]);
        buckets[t.exponents[slot]].push_back(std::move(r));
    }
    std::vector<Polynomial> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(Polynomial::from_terms(rest, std::move(b)));
    return out;
}

std::uint64_t degree_in(const Polynomial& p, std::string_view v) {
    const auto& vars = p.variables();
    auto it = std::find(vars.begin(), vars.end(), v);
    if (it == vars.end()) return 0;
    const auto slot = static_cast<std::size_t>(it - vars.begin());
    std::uint64_t d = 0;
    for (const auto& t : p.terms()) d = std::max<std::uint64_t>(d, t.exponents[slot]);
    return d;
}

std::uint64_t total_degree(const Polynomial& p) {
    // Terms are sorted by descending total degree.
    return p.is_zero() ? 0 : degree_of(p.terms().front().exponents);
}

PolynomialStats stats(const Polynomial& p) {
    PolynomialStats s;
    for (const auto& v : p.variables()) s.degree_per_variable[v] = degree_in(p, v);
    s.total_degree = total_degree(p);
    s.term_count = p.terms().size();
    for (const auto& t : p.terms()) {
        BigInteger m = abs(t.coefficient);
        s.abs_coefficient_sum += m;
        if (m > s.max_abs_coefficient) s.max_abs_coefficient = m;
    }
    return s;
}

std::size_t decimal_digits(const BigInteger& value) {
    BigInteger m = abs(value);
    return m == 0 ? 1 : m.get_str().size();
}

}  // namespace urep
