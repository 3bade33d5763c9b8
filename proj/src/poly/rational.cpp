#include "hydroclose/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace hydroclose {

Rational make_rational(long num, long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

mpz_class parse_integer(std::string_view s, bool allow_sign) {
    s = trim(s);
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) throw std::invalid_argument("empty integer in rational literal");
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            throw std::invalid_argument("bad rational literal: " + std::string(s));
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return mpz_class(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    text = trim(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text, true));
    mpz_class num = parse_integer(text.substr(0, slash), true);
    mpz_class den = parse_integer(text.substr(slash + 1), false);
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational binomial(unsigned n, unsigned k) {
    if (k > n) return Rational(0);
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return Rational(r);
}

Rational rpow(const Rational& x, int e) {
    if (e < 0) {
        if (x == 0) throw std::domain_error("zero raised to a negative power");
        Rational inv = 1 / x;
        return rpow(inv, -e);
    }
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(num, den);  // already reduced: powers of coprime integers stay coprime
}

std::optional<Rational> exact_root(const Rational& x, unsigned k) {
    if (k == 0) throw std::domain_error("zeroth root");
    if (x < 0 && k % 2 == 0) return std::nullopt;
    mpz_class num = abs(x.get_num());
    mpz_class den = x.get_den();
    mpz_class rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k)) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k)) return std::nullopt;
    if (x < 0) rn = -rn;
    return Rational(rn, rd);
}

}  // namespace hydroclose
