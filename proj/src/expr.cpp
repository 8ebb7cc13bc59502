#include "urep/expr.hpp"

#include <algorithm>
#include <sstream>
#include <type_traits>
#include <unordered_map>

namespace urep {

namespace {

using NodePtr = const Expr::Node*;

std::shared_ptr<Expr::Node> make_node(Expr::Kind kind) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = kind;
    return n;
}

bool is_constant(const Expr& e, long value) {
    return e.kind() == Expr::Kind::constant && e.node().value == value;
}

Expr make_sum(std::vector<std::pair<int, Expr>> parts) {
    std::vector<std::pair<int, Expr>> kept;
    for (auto& [sign, e] : parts) {
        if (is_constant(e, 0)) continue;
        // Flatten nested sums so long chains render without parentheses.
        if (e.kind() == Expr::Kind::sum) {
            const auto& n = e.node();
            for (std::size_t i = 0; i < n.children.size(); ++i) kept.emplace_back(sign * n.signs[i], n.children[i]);
        } else {
            kept.emplace_back(sign, e);
        }
    }
    if (kept.empty()) return Expr(0L);
    if (kept.size() == 1 && kept[0].first == 1) return kept[0].second;
    auto n = make_node(Expr::Kind::sum);
    for (auto& [sign, e] : kept) {
        n->signs.push_back(sign);
        n->children.push_back(std::move(e));
    }
    return Expr::from_node(std::move(n));
}

}  // namespace

Expr::Expr() : Expr(BigInteger(0)) {}
Expr::Expr(long value) : Expr(BigInteger(value)) {}

Expr::Expr(const BigInteger& value) {
    auto n = make_node(Kind::constant);
    n->value = value;
    node_ = std::move(n);
}

Expr::Expr(const Polynomial& leaf) {
    if (leaf.is_constant()) {
        auto n = make_node(Kind::constant);
        n->value = leaf.constant_term();
        node_ = std::move(n);
        return;
    }
    auto n = make_node(Kind::leaf);
    n->poly = leaf;
    node_ = std::move(n);
}

Expr Expr::variable(const std::string& name) {
    auto n = make_node(Kind::variable);
    n->name = name;
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr::Kind Expr::kind() const { return node_->kind; }

Expr operator+(const Expr& lhs, const Expr& rhs) { return make_sum({{1, lhs}, {1, rhs}}); }
Expr operator-(const Expr& lhs, const Expr& rhs) { return make_sum({{1, lhs}, {-1, rhs}}); }

Expr Expr::operator-() const {
    if (kind() == Kind::constant) return Expr(BigInteger(-node_->value));
    return make_sum({{-1, *this}});
}

Expr operator*(const Expr& lhs, const Expr& rhs) {
    if (is_constant(lhs, 0) || is_constant(rhs, 0)) return Expr(0L);
    if (is_constant(lhs, 1)) return rhs;
    if (is_constant(rhs, 1)) return lhs;
    auto n = make_node(Expr::Kind::product);
    for (const Expr* side : {&lhs, &rhs}) {
        if (side->kind() == Expr::Kind::product) {
            for (const auto& c : side->node().children) n->children.push_back(c);
        } else {
            n->children.push_back(*side);
        }
    }
    return Expr::from_node(std::move(n));
}

Expr pow(const Expr& base, std::uint32_t exponent) {
    if (exponent == 0) return Expr(1L);
    if (exponent == 1) return base;
    auto n = make_node(Expr::Kind::power);
    n->children.push_back(base);
    n->exponent = exponent;
    return Expr::from_node(std::move(n));
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

// Binding strength of the rendered text's top-level operator.
enum class Level { sum = 0, product = 1, atom = 2 };

struct Rendered {
    std::string text;
    Level level;
};

Rendered render(const Expr& e);

std::string wrap(const Rendered& r, Level needed) {
    if (static_cast<int>(r.level) >= static_cast<int>(needed)) return r.text;
    return "(" + r.text + ")";
}

Rendered render(const Expr& e) {
    const auto& n = e.node();
    switch (n.kind) {
        case Expr::Kind::constant:
            return {n.value.get_str(), sgn(n.value) < 0 ? Level::sum : Level::atom};
        case Expr::Kind::variable:
            return {n.name, Level::atom};
        case Expr::Kind::leaf: {
            const auto& terms = n.poly.terms();
            const bool single = terms.size() == 1 && sgn(terms[0].coefficient) > 0;
            Level level = Level::sum;
            if (single) {
                std::uint32_t nonzero = 0, top = 0;
                for (auto x : terms[0].exponents) {
                    if (x) ++nonzero;
                    top = std::max(top, x);
                }
                level = (terms[0].coefficient == 1 && nonzero == 1 && top == 1) ? Level::atom : Level::product;
            }
            return {n.poly.to_string(), level};
        }
        case Expr::Kind::sum: {
            std::ostringstream out;
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                const auto child = render(n.children[i]);
                if (i == 0) {
                    if (n.signs[i] < 0) {
                        out << "-" << wrap(child, Level::product);
                    } else {
                        out << child.text;
                    }
                } else {
                    out << (n.signs[i] < 0 ? " - " : " + ") << wrap(child, Level::product);
                }
            }
            return {out.str(), Level::sum};
        }
        case Expr::Kind::product: {
            std::ostringstream out;
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i) out << "*";
                out << wrap(render(n.children[i]), Level::product);
            }
            return {out.str(), Level::product};
        }
        case Expr::Kind::power: {
            const auto base = render(n.children[0]);
            return {wrap(base, Level::atom) + "^" + std::to_string(n.exponent), Level::product};
        }
    }
    throw std::logic_error("render: unknown node kind");
}

}  // namespace

std::string Expr::to_string() const { return render(*this).text; }

// ---------------------------------------------------------------------------
// Evaluation and expansion over a shared DAG; results memoized per node.

namespace {

// One-pass sum: gather every term over the union of variables, then
// canonicalize once.
Polynomial signed_sum(const std::vector<std::pair<int, Polynomial>>& parts) {
    std::vector<std::string> vars;
    for (const auto& [sign, p] : parts) vars.insert(vars.end(), p.variables().begin(), p.variables().end());
    std::sort(vars.begin(), vars.end(), [](const auto& x, const auto& y) { return variable_less(x, y); });
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    std::vector<Term> terms;
    for (const auto& [sign, p] : parts) {
        for (auto& t : p.terms_over(vars)) {
            if (sign < 0) t.coefficient = -t.coefficient;
            terms.push_back(std::move(t));
        }
    }
    return Polynomial::from_terms(std::move(vars), std::move(terms));
}

template <typename Value, typename LeafFn, typename VarFn>
class Folder {
public:
    Folder(LeafFn leaf, VarFn var) : leaf_(std::move(leaf)), var_(std::move(var)) {}

    Value operator()(const Expr& e) {
        const NodePtr key = &e.node();
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Value v = compute(e);
        memo_.emplace(key, v);
        return v;
    }

private:
    Value compute(const Expr& e) {
        const auto& n = e.node();
        switch (n.kind) {
            case Expr::Kind::constant: return Value(n.value);
            case Expr::Kind::variable: return var_(n.name);
            case Expr::Kind::leaf: return leaf_(n.poly);
            case Expr::Kind::sum: {
                if constexpr (std::is_same_v<Value, Polynomial>) {
                    std::vector<std::pair<int, Polynomial>> parts;
                    for (std::size_t i = 0; i < n.children.size(); ++i)
                        parts.emplace_back(n.signs[i], (*this)(n.children[i]));
                    return signed_sum(parts);
                }
                Value acc(0L);
                for (std::size_t i = 0; i < n.children.size(); ++i) {
                    if (n.signs[i] < 0) {
                        acc -= (*this)(n.children[i]);
                    } else {
                        acc += (*this)(n.children[i]);
                    }
                }
                return acc;
            }
            case Expr::Kind::product: {
                Value acc = (*this)(n.children[0]);
                for (std::size_t i = 1; i < n.children.size(); ++i) acc *= (*this)(n.children[i]);
                return acc;
            }
            case Expr::Kind::power: {
                Value base = (*this)(n.children[0]);
                Value acc(1L);
                for (std::uint32_t i = n.exponent;;) {
                    if (i & 1u) acc *= base;
                    i >>= 1u;
                    if (!i) break;
                    base *= base;
                }
                return acc;
            }
        }
        throw std::logic_error("fold: unknown node kind");
    }

    LeafFn leaf_;
    VarFn var_;
    std::unordered_map<NodePtr, Value> memo_;
};

template <typename Value, typename LeafFn, typename VarFn>
Value fold(const Expr& e, LeafFn leaf, VarFn var) {
    Folder<Value, LeafFn, VarFn> folder(std::move(leaf), std::move(var));
    return folder(e);
}

}  // namespace

BigInteger evaluate(const Expr& e, const Point& point) {
    return fold<BigInteger>(
        e, [&](const Polynomial& p) { return evaluate(p, point); },
        [&](const std::string& name) -> BigInteger {
            auto it = point.find(name);
            if (it == point.end()) throw UnboundVariable(name);
            return it->second;
        });
}

Polynomial specialize(const Expr& e, const Point& point) {
    return fold<Polynomial>(
        e, [&](const Polynomial& p) { return specialize(p, point); },
        [&](const std::string& name) -> Polynomial {
            auto it = point.find(name);
            if (it != point.end()) return Polynomial(it->second);
            return Polynomial::variable(name);
        });
}

Polynomial expand(const Expr& e) { return specialize(e, Point{}); }

std::optional<Polynomial> expand_within(const Expr& e, std::size_t pair_budget) {
    struct OverBudget {};
    std::unordered_map<NodePtr, Polynomial> memo;
    std::function<const Polynomial&(const Expr&)> go = [&](const Expr& x) -> const Polynomial& {
        const NodePtr key = &x.node();
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        const auto& n = x.node();
        Polynomial v;
        auto mul = [&](const Polynomial& l, const Polynomial& r) {
            if (l.terms().size() * r.terms().size() > pair_budget) throw OverBudget{};
            return l * r;
        };
        switch (n.kind) {
            case Expr::Kind::constant: v = Polynomial(n.value); break;
            case Expr::Kind::variable: v = Polynomial::variable(n.name); break;
            case Expr::Kind::leaf: v = n.poly; break;
            case Expr::Kind::sum: {
                std::vector<std::pair<int, Polynomial>> parts;
                for (std::size_t i = 0; i < n.children.size(); ++i) parts.emplace_back(n.signs[i], go(n.children[i]));
                v = signed_sum(parts);
                break;
            }
            case Expr::Kind::product:
                v = go(n.children[0]);
                for (std::size_t i = 1; i < n.children.size(); ++i) v = mul(v, go(n.children[i]));
                break;
            case Expr::Kind::power: {
                Polynomial base = go(n.children[0]);
                v = Polynomial(1L);
                for (std::uint32_t i = n.exponent;;) {
                    if (i & 1u) v = mul(v, base);
                    i >>= 1u;
                    if (!i) break;
                    base = mul(base, base);
                }
                break;
            }
        }
        return memo.emplace(key, std::move(v)).first->second;
    };
    try {
        return go(e);
    } catch (const OverBudget&) {
        return std::nullopt;
    }
}

DegreeBound degree_bound(const Expr& e, const std::string& var) {
    std::unordered_map<NodePtr, DegreeBound> memo;
    std::function<DegreeBound(const Expr&)> go = [&](const Expr& x) -> DegreeBound {
        const NodePtr key = &x.node();
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        const auto& n = x.node();
        DegreeBound d;
        switch (n.kind) {
            case Expr::Kind::constant: d = {0, n.value != 0}; break;
            case Expr::Kind::variable: d = {n.name == var ? 1u : 0u, true}; break;
            case Expr::Kind::leaf: d = {degree_in(n.poly, var), !n.poly.is_zero()}; break;
            case Expr::Kind::sum: {
                std::size_t at_max = 0;
                bool max_exact = false;
                for (const auto& c : n.children) {
                    const auto cd = go(c);
                    if (at_max == 0 || cd.degree > d.degree) {
                        d.degree = cd.degree;
                        at_max = 1;
                        max_exact = cd.exact;
                    } else if (cd.degree == d.degree) {
                        ++at_max;
                    }
                }
                d.exact = at_max == 1 && max_exact;
                break;
            }
            case Expr::Kind::product:
                d.exact = true;
                for (const auto& c : n.children) {
                    const auto cd = go(c);
                    d.degree += cd.degree;
                    d.exact = d.exact && cd.exact;
                }
                break;
            case Expr::Kind::power: {
                const auto cd = go(n.children[0]);
                d = {cd.degree * n.exponent, cd.exact};
                break;
            }
        }
        memo.emplace(key, d);
        return d;
    };
    return go(e);
}

BigInteger abs_sum_bound(const Expr& e) {
    return fold<BigInteger>(
        e,
        [](const Polynomial& p) {
            BigInteger s = 0;
            for (const auto& t : p.terms()) s += abs(t.coefficient);
            return s;
        },
        [](const std::string&) { return BigInteger(1); });
}

std::vector<std::string> expr_variables(const Expr& e) {
    std::vector<std::string> out;
    std::unordered_map<NodePtr, bool> seen;
    std::function<void(const Expr&)> go = [&](const Expr& x) {
        if (!seen.emplace(&x.node(), true).second) return;
        const auto& n = x.node();
        if (n.kind == Expr::Kind::variable) out.push_back(n.name);
        if (n.kind == Expr::Kind::leaf) out.insert(out.end(), n.poly.variables().begin(), n.poly.variables().end());
        for (const auto& c : n.children) go(c);
    };
    go(e);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return variable_less(x, y); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace urep
