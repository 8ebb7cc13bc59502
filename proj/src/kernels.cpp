#include "urep/kernels.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>

#include <omp.h>

namespace urep::kernels {

namespace {

std::vector<std::string> union_variables(const Polynomial& lhs, const Polynomial& rhs) {
    std::vector<std::string> out;
    std::set_union(lhs.variables().begin(), lhs.variables().end(), rhs.variables().begin(),
                   rhs.variables().end(), std::back_inserter(out),
                   [](const std::string& x, const std::string& y) { return variable_less(x, y); });
    return out;
}

// Exponent vectors packed into one word, one fixed-width field per variable.
struct Packing {
    unsigned bits = 0;
    std::size_t width = 0;

    std::uint64_t pack(const ExponentVector& e) const {
        if (bits == 64) return e.empty() ? 0 : e[0];
        std::uint64_t key = 0;
        for (auto x : e) key = (key << bits) | x;
        return key;
    }

    ExponentVector unpack(std::uint64_t key) const {
        ExponentVector e(width);
        const std::uint64_t mask = bits == 64 ? ~0ull : ((1ull << bits) - 1);
        for (std::size_t i = width; i-- > 0;) {
            e[i] = static_cast<std::uint32_t>(key & mask);
            key = bits == 64 ? 0 : key >> bits;
        }
        return e;
    }
};

std::optional<Packing> choose_packing(const std::vector<Term>& lt, const std::vector<Term>& rt,
                                      std::size_t width) {
    if (width == 0) return Packing{64, 0};
    const unsigned bits = static_cast<unsigned>(64 / width);
    if (bits == 0) return std::nullopt;
    std::vector<std::uint64_t> lmax(width, 0), rmax(width, 0);
    for (const auto& t : lt)
        for (std::size_t i = 0; i < width; ++i) lmax[i] = std::max<std::uint64_t>(lmax[i], t.exponents[i]);
    for (const auto& t : rt)
        for (std::size_t i = 0; i < width; ++i) rmax[i] = std::max<std::uint64_t>(rmax[i], t.exponents[i]);
    for (std::size_t i = 0; i < width; ++i) {
        const std::uint64_t top = lmax[i] + rmax[i];
        if (bits < 64 && top >= (1ull << bits)) return std::nullopt;
    }
    return Packing{bits, width};
}

using Accumulator = std::unordered_map<std::uint64_t, BigInteger>;

void accumulate_rows(Accumulator& acc, const std::vector<std::uint64_t>& lkeys, const std::vector<Term>& lt,
                     const std::vector<std::uint64_t>& rkeys, const std::vector<Term>& rt, std::size_t begin,
                     std::size_t stride) {
    for (std::size_t i = begin; i < lt.size(); i += stride) {
        for (std::size_t j = 0; j < rt.size(); ++j) {
            auto& slot = acc[lkeys[i] + rkeys[j]];
            mpz_addmul(slot.get_mpz_t(), lt[i].coefficient.get_mpz_t(), rt[j].coefficient.get_mpz_t());
        }
    }
}

Polynomial finish(std::vector<std::string> vars, const Packing& packing, Accumulator& acc) {
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [key, coeff] : acc) {
        if (coeff == 0) continue;
        terms.push_back(Term{packing.unpack(key), std::move(coeff)});
    }
    return Polynomial::from_terms(std::move(vars), std::move(terms));
}

}  // namespace

Polynomial multiply_reference(const Polynomial& lhs, const Polynomial& rhs) {
    auto vars = union_variables(lhs, rhs);
    const auto lt = lhs.terms_over(vars);
    const auto rt = rhs.terms_over(vars);
    std::map<ExponentVector, BigInteger> acc;
    for (const auto& x : lt) {
        for (const auto& y : rt) {
            ExponentVector e(vars.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = x.exponents[i] + y.exponents[i];
            acc[e] += x.coefficient * y.coefficient;
        }
    }
    std::vector<Term> terms;
    for (auto& [e, c] : acc) terms.push_back(Term{e, c});
    return Polynomial::from_terms(std::move(vars), std::move(terms));
}

Polynomial multiply_parallel(const Polynomial& lhs, const Polynomial& rhs, int threads) {
    if (lhs.is_zero() || rhs.is_zero()) return Polynomial{};
    auto vars = union_variables(lhs, rhs);
    const auto lt = lhs.terms_over(vars);
    const auto rt = rhs.terms_over(vars);
    const auto packing = choose_packing(lt, rt, vars.size());
    if (!packing) return multiply_reference(lhs, rhs);

    std::vector<std::uint64_t> lkeys(lt.size()), rkeys(rt.size());
    for (std::size_t i = 0; i < lt.size(); ++i) lkeys[i] = packing->pack(lt[i].exponents);
    for (std::size_t j = 0; j < rt.size(); ++j) rkeys[j] = packing->pack(rt[j].exponents);

    const int team = threads > 0 ? threads : omp_get_max_threads();
    const std::size_t work = lt.size() * rt.size();
    if (team <= 1 || work < kParallelWorkThreshold || lt.size() < 2) {
        Accumulator acc;
        acc.reserve(std::min<std::size_t>(work, 1u << 20));
        accumulate_rows(acc, lkeys, lt, rkeys, rt, 0, 1);
        return finish(std::move(vars), *packing, acc);
    }

    std::vector<Accumulator> partial(static_cast<std::size_t>(team));
#pragma omp parallel num_threads(team)
    {
        const auto tid = static_cast<std::size_t>(omp_get_thread_num());
        const auto stride = static_cast<std::size_t>(omp_get_num_threads());
        accumulate_rows(partial[tid], lkeys, lt, rkeys, rt, tid, stride);
    }
    Accumulator& acc = partial.front();
    for (std::size_t t = 1; t < partial.size(); ++t)
        for (auto& [key, coeff] : partial[t]) acc[key] += coeff;
    return finish(std::move(vars), *packing, acc);
}

}  // namespace urep::kernels
