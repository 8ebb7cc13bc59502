#include "urep/parser.hpp"

#include <cctype>
#include <limits>

namespace urep {

namespace {

const char* kind_label(ParseError::Kind kind) {
    switch (kind) {
        case ParseError::Kind::syntax: return "SyntaxError";
        case ParseError::Kind::unknown_variable: return "UnknownVariable";
        case ParseError::Kind::non_integer_exponent: return "NonIntegerExponent";
    }
    return "ParseError";
}

class Parser {
public:
    Parser(std::string_view text, const VariablePredicate& allowed) : text_(text), allowed_(allowed) {}

    Expr parse() {
        Expr e = expr();
        skip_space();
        if (pos_ != text_.size()) fail(ParseError::Kind::syntax, "unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(ParseError::Kind kind, const std::string& message) const {
        throw ParseError(kind, pos_, message);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Expr expr() {
        Expr acc = term();
        for (;;) {
            if (accept('+')) {
                acc = acc + term();
            } else if (accept('-')) {
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    Expr term() {
        Expr acc = unary();
        while (accept('*')) acc = acc * unary();
        return acc;
    }

    Expr unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (!accept('^')) return base;
        const char c = peek();
        if (!std::isdigit(static_cast<unsigned char>(c)))
            fail(ParseError::Kind::non_integer_exponent, "exponent must be a nonnegative integer literal");
        const std::size_t start = pos_;
        std::string digits = read_digits();
        if (pos_ < text_.size() && text_[pos_] == '.')
            fail(ParseError::Kind::non_integer_exponent, "exponent must be a nonnegative integer literal");
        const BigInteger value(digits);
        if (value > std::numeric_limits<std::uint32_t>::max()) {
            pos_ = start;
            fail(ParseError::Kind::syntax, "exponent too large");
        }
        return pow(base, static_cast<std::uint32_t>(value.get_ui()));
    }

    std::string read_digits() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    Expr primary() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Expr inner = expr();
            if (!accept(')')) fail(ParseError::Kind::syntax, "expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits = read_digits();
            if (pos_ < text_.size() && text_[pos_] == '.') fail(ParseError::Kind::syntax, "non-integer literal");
            return Expr(BigInteger(digits));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            if (!allowed_(name)) {
                pos_ = start;
                fail(ParseError::Kind::unknown_variable, "unknown variable '" + name + "'");
            }
            return Expr::variable(name);
        }
        if (c == '\0') fail(ParseError::Kind::syntax, "unexpected end of input");
        fail(ParseError::Kind::syntax, "unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    const VariablePredicate& allowed_;
    std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(Kind kind, std::size_t position, const std::string& message)
    : std::runtime_error(std::string(kind_label(kind)) + " at position " + std::to_string(position) + ": " +
                         message),
      kind_(kind),
      position_(position) {}

Expr parse_expression(std::string_view text, const VariablePredicate& allowed) {
    return Parser(text, allowed).parse();
}

VariablePredicate source_variables(int delta) {
    return [delta](std::string_view name) {
        if (name == "a") return true;
        if (name.size() < 2 || name[0] != 'h' || name[1] == '0') return false;
        long index = 0;
        for (std::size_t i = 1; i < name.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
            index = index * 10 + (name[i] - '0');
            if (index > delta) return false;
        }
        return index >= 1;
    };
}

Polynomial parse_polynomial(std::string_view text, int delta) {
    return parse_polynomial(text, source_variables(delta));
}

Polynomial parse_polynomial(std::string_view text, const VariablePredicate& allowed) {
    return expand(parse_expression(text, allowed));
}

}  // namespace urep
