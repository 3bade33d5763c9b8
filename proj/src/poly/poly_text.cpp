#include "hydroclose/multipoly.hpp"

#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hydroclose {

std::string to_string(const MultiPoly& p, std::span<const std::string> names) {
    std::vector<std::string> fallback;
    if (names.empty()) {
        fallback = indexed_names("v", p.nvars());
        names = fallback;
    }
    if (names.size() < p.nvars()) throw std::invalid_argument("not enough variable names");
    if (p.is_zero()) return "0";

    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        if (!first) out << " + ";
        first = false;
        out << to_string(c);
        bool first_factor = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            out << (first_factor ? " * " : "*") << names[i];
            if (e[i] > 1) out << '^' << e[i];
            first_factor = false;
        }
    }
    return out.str();
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << to_string(p); }

namespace {

class Parser {
public:
    Parser(std::string_view text, std::span<const std::string> names) : s_(text), names_(names) {}

    MultiPoly parse() {
        MultiPoly r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MultiPoly expr() {
        MultiPoly r = term();
        for (;;) {
            if (accept('+')) r += term();
            else if (accept('-')) r -= term();
            else return r;
        }
    }

    MultiPoly term() {
        MultiPoly r = unary();
        for (;;) {
            if (accept('*')) {
                r *= unary();
            } else if (accept('/')) {
                MultiPoly d = unary();
                if (d.total_degree() > 0) fail("division by a non-constant");
                Rational c = d.constant_term();
                if (c == 0) fail("division by zero");
                Rational inv = 1 / c;
                r *= inv;
            } else {
                return r;
            }
        }
    }

    MultiPoly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        MultiPoly base = primary();
        if (accept('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            base = pow(base, static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
        }
        return base;
    }

    MultiPoly primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly r = expr();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return MultiPoly::constant(names_.size(), Rational(mpz_class(std::string(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string_view name = s_.substr(start, pos_ - start);
            for (std::size_t i = 0; i < names_.size(); ++i)
                if (names_[i] == name) return MultiPoly::variable(names_.size(), i);
            pos_ = start;
            fail("unknown variable '" + std::string(name) + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    std::span<const std::string> names_;
    std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, std::span<const std::string> names) {
    return Parser(text, names).parse();
}

}  // namespace hydroclose
