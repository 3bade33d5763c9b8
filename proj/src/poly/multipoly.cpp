#include "hydroclose/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hydroclose {

namespace {

unsigned degree_of(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

}  // namespace

bool GradedLexGreater::operator()(const Exponents& a, const Exponents& b) const {
    unsigned da = degree_of(a), db = degree_of(b);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MultiPoly MultiPoly::constant(std::size_t nvars, const Rational& c) {
    MultiPoly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw std::out_of_range("variable index out of range");
    Exponents e(nvars, 0);
    e[index] = 1;
    return monomial(Rational(1), std::move(e));
}

MultiPoly MultiPoly::monomial(const Rational& c, Exponents e) {
    MultiPoly p(e.size());
    p.add_term(e, c);
    return p;
}

Rational MultiPoly::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiPoly::constant_term() const { return coefficient(Exponents(nvars_, 0)); }

int MultiPoly::total_degree() const {
    // Graded order puts the highest degree first.
    return terms_.empty() ? -1 : static_cast<int>(degree_of(terms_.begin()->first));
}

unsigned MultiPoly::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
    return d;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
    if (e.size() != nvars_) throw std::invalid_argument("exponent vector length does not match nvars");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void MultiPoly::check_same(const MultiPoly& q) const {
    if (nvars_ != q.nvars_)
        throw std::invalid_argument("polynomial variable counts differ (" + std::to_string(nvars_) + " vs " +
                                    std::to_string(q.nvars_) + ")");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& q) {
    check_same(q);
    for (const auto& [e, c] : q.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& q) {
    check_same(q);
    for (const auto& [e, c] : q.terms_) add_term(e, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& q) {
    *this = *this * q;
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(*this);
    for (auto& [e, v] : r.terms_) v = -v;
    return r;
}

bool MultiPoly::operator==(const MultiPoly& q) const {
    if (nvars_ != q.nvars_ || terms_.size() != q.terms_.size()) return false;
    auto a = terms_.begin();
    for (auto b = q.terms_.begin(); b != q.terms_.end(); ++a, ++b)
        if (a->first != b->first || a->second != b->second) return false;
    return true;
}

MultiPoly operator+(MultiPoly p, const MultiPoly& q) { return p += q; }
MultiPoly operator-(MultiPoly p, const MultiPoly& q) { return p -= q; }

MultiPoly operator*(const MultiPoly& p, const MultiPoly& q) {
    if (p.nvars() != q.nvars())
        throw std::invalid_argument("polynomial variable counts differ in product");
    MultiPoly r(p.nvars());
    Exponents e(p.nvars());
    Rational c;
    for (const auto& [ep, cp] : p.terms()) {
        for (const auto& [eq, cq] : q.terms()) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ep[i] + eq[i];
            c = cp * cq;
            r.add_term(e, c);
        }
    }
    return r;
}

MultiPoly operator*(MultiPoly p, const Rational& c) { return p *= c; }
MultiPoly operator*(const Rational& c, MultiPoly p) { return p *= c; }

MultiPoly pow(const MultiPoly& p, unsigned e) {
    MultiPoly result = MultiPoly::constant(p.nvars(), Rational(1));
    MultiPoly base = p;
    while (e > 0) {
        if (e & 1u) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

MultiPoly diff(const MultiPoly& p, std::size_t var) {
    if (var >= p.nvars()) throw std::out_of_range("derivative variable out of range");
    MultiPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        if (e[var] == 0) continue;
        Exponents f = e;
        --f[var];
        Rational k = c * e[var];
        r.add_term(f, k);
    }
    return r;
}

MultiPoly euler_operator(const MultiPoly& p) {
    MultiPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        Rational k = c * degree_of(e);
        r.add_term(e, k);
    }
    return r;
}

namespace {

template <class T>
T eval_impl(const MultiPoly& p, std::span<const T> x) {
    if (x.size() != p.nvars()) throw std::invalid_argument("evaluation point has wrong length");
    // Power tables per variable, then one product per term.
    std::vector<std::vector<T>> powers(p.nvars());
    for (std::size_t i = 0; i < p.nvars(); ++i) {
        unsigned d = p.degree_in(i);
        powers[i].resize(d + 1);
        powers[i][0] = T(1);
        for (unsigned k = 1; k <= d; ++k) powers[i][k] = powers[i][k - 1] * x[i];
    }
    T sum(0);
    for (const auto& [e, c] : p.terms()) {
        T term;
        if constexpr (std::is_same_v<T, double>) term = c.get_d();
        else term = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) term *= powers[i][e[i]];
        sum += term;
    }
    return sum;
}

}  // namespace

Rational eval(const MultiPoly& p, std::span<const Rational> point) { return eval_impl<Rational>(p, point); }
double eval(const MultiPoly& p, std::span<const double> point) { return eval_impl<double>(p, point); }

std::optional<int> homogeneous_degree(const MultiPoly& p) {
    if (p.is_zero()) return kAnyDegree;
    unsigned d = degree_of(p.terms().begin()->first);
    for (const auto& [e, c] : p.terms())
        if (degree_of(e) != d) return std::nullopt;
    return static_cast<int>(d);
}

MultiPoly compose(const MultiPoly& p, std::span<const MultiPoly> images) {
    if (images.size() != p.nvars()) throw std::invalid_argument("compose needs one image per variable");
    if (images.empty()) {
        // Only constants live in zero variables; keep them constant.
        return p;
    }
    const std::size_t target = images.front().nvars();
    for (const auto& im : images)
        if (im.nvars() != target) throw std::invalid_argument("compose images have different variable counts");

    std::vector<std::vector<MultiPoly>> powers(p.nvars());
    for (std::size_t i = 0; i < p.nvars(); ++i) {
        unsigned d = p.degree_in(i);
        powers[i].reserve(d + 1);
        powers[i].push_back(MultiPoly::constant(target, Rational(1)));
        for (unsigned k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * images[i]);
    }
    MultiPoly r(target);
    for (const auto& [e, c] : p.terms()) {
        MultiPoly term = MultiPoly::constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) term *= powers[i][e[i]];
        r += term;
    }
    return r;
}

MultiPoly substitute(const MultiPoly& p, const std::map<std::size_t, MultiPoly>& assignments) {
    std::size_t target = p.nvars();
    if (!assignments.empty()) target = assignments.begin()->second.nvars();
    for (const auto& [var, image] : assignments) {
        if (var >= p.nvars()) throw std::out_of_range("substituted variable out of range");
        if (image.nvars() != target) throw std::invalid_argument("substitution images have different variable counts");
    }
    std::vector<MultiPoly> images;
    images.reserve(p.nvars());
    for (std::size_t i = 0; i < p.nvars(); ++i) {
        auto it = assignments.find(i);
        if (it != assignments.end()) {
            images.push_back(it->second);
        } else {
            if (i >= target) throw std::invalid_argument("unassigned variable is outside the target variable set");
            images.push_back(MultiPoly::variable(target, i));
        }
    }
    return compose(p, images);
}

MultiPoly embed(const MultiPoly& p, std::size_t new_nvars, std::size_t offset) {
    if (p.nvars() + offset > new_nvars) throw std::invalid_argument("embedding does not fit");
    MultiPoly r(new_nvars);
    Exponents f(new_nvars, 0);
    for (const auto& [e, c] : p.terms()) {
        std::fill(f.begin(), f.end(), 0u);
        std::copy(e.begin(), e.end(), f.begin() + static_cast<std::ptrdiff_t>(offset));
        r.add_term(f, c);
    }
    return r;
}

std::vector<std::string> indexed_names(std::string_view prefix, std::size_t count, std::size_t first) {
    std::vector<std::string> names;
    names.reserve(count);
    for (std::size_t i = 0; i < count; ++i) names.push_back(std::string(prefix) + std::to_string(first + i));
    return names;
}

CompiledPoly::CompiledPoly(const MultiPoly& p) : nvars_(p.nvars()) {
    coef_.reserve(p.size());
    exps_.reserve(p.size() * nvars_);
    for (const auto& [e, c] : p.terms()) {
        coef_.push_back(c.get_d());
        for (unsigned k : e) {
            if (k > 255) throw std::overflow_error("exponent too large for compiled polynomial");
            exps_.push_back(static_cast<unsigned char>(k));
        }
    }
}

double CompiledPoly::operator()(const double* x) const {
    double sum = 0.0;
    const unsigned char* e = exps_.data();
    for (double c : coef_) {
        double term = c;
        for (std::size_t i = 0; i < nvars_; ++i, ++e)
            for (unsigned k = 0; k < *e; ++k) term *= x[i];
        sum += term;
    }
    return sum;
}

}  // namespace hydroclose
