#pragma once

#include "hydroclose/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hydroclose {

using Exponents = std::vector<unsigned>;

// Descending graded-lex: higher total degree first, ties broken
// lexicographically with larger leading exponents first.
struct GradedLexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

// Sparse polynomial in nvars variables with exact rational coefficients.
// No stored coefficient is zero; the zero polynomial has no terms.
class MultiPoly {
public:
    using TermMap = std::map<Exponents, Rational, GradedLexGreater>;

    MultiPoly() = default;
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const Rational& c);
    static MultiPoly variable(std::size_t nvars, std::size_t index);
    static MultiPoly monomial(const Rational& c, Exponents e);

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(const Exponents& e) const;
    Rational constant_term() const;
    // -1 for the zero polynomial.
    int total_degree() const;
    // Largest exponent of one variable over all terms.
    unsigned degree_in(std::size_t var) const;

    void add_term(const Exponents& e, const Rational& c);

    MultiPoly& operator+=(const MultiPoly& q);
    MultiPoly& operator-=(const MultiPoly& q);
    MultiPoly& operator*=(const MultiPoly& q);
    MultiPoly& operator*=(const Rational& c);
    MultiPoly operator-() const;

    bool operator==(const MultiPoly& q) const;
    bool operator!=(const MultiPoly& q) const { return !(*this == q); }

private:
    void check_same(const MultiPoly& q) const;

    std::size_t nvars_ = 0;
    TermMap terms_;
};

MultiPoly operator+(MultiPoly p, const MultiPoly& q);
MultiPoly operator-(MultiPoly p, const MultiPoly& q);
MultiPoly operator*(const MultiPoly& p, const MultiPoly& q);
MultiPoly operator*(MultiPoly p, const Rational& c);
MultiPoly operator*(const Rational& c, MultiPoly p);

MultiPoly pow(const MultiPoly& p, unsigned e);
MultiPoly diff(const MultiPoly& p, std::size_t var);
// Σ x_i ∂p/∂x_i, computed termwise.
MultiPoly euler_operator(const MultiPoly& p);

Rational eval(const MultiPoly& p, std::span<const Rational> point);
double eval(const MultiPoly& p, std::span<const double> point);

// Degree d when every term has total degree d, empty for mixed degrees,
// kAnyDegree for the zero polynomial.
inline constexpr int kAnyDegree = -1;
std::optional<int> homogeneous_degree(const MultiPoly& p);

// Replace every variable x_i by images[i]; all images share one variable count.
MultiPoly compose(const MultiPoly& p, std::span<const MultiPoly> images);

// Replace the listed variables; the others map to themselves, so the target
// variable count must cover them.
MultiPoly substitute(const MultiPoly& p, const std::map<std::size_t, MultiPoly>& assignments);

// Re-embed into new_nvars variables with x_i -> x_{i+offset}.
MultiPoly embed(const MultiPoly& p, std::size_t new_nvars, std::size_t offset = 0);

std::vector<std::string> indexed_names(std::string_view prefix, std::size_t count, std::size_t first = 1);

// Terms "coef * x1^2*x3" joined by " + " in canonical order; "0" for zero.
// Default names are v1..vn.
std::string to_string(const MultiPoly& p, std::span<const std::string> names = {});
std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

// Inverse of to_string. Accepts + - * ^ parentheses, rational literals and the
// given variable names; division is allowed only by constants.
MultiPoly parse_poly(std::string_view text, std::span<const std::string> names);

// Double-coefficient snapshot for fast repeated evaluation on grids.
class CompiledPoly {
public:
    CompiledPoly() = default;
    explicit CompiledPoly(const MultiPoly& p);

    std::size_t nvars() const { return nvars_; }
    double operator()(const double* x) const;

private:
    std::size_t nvars_ = 0;
    std::vector<double> coef_;
    std::vector<unsigned char> exps_;  // nterms * nvars, row-major
};

}  // namespace hydroclose
