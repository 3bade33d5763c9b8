#include "hydroclose/closures.hpp"
#include "hydroclose/moments.hpp"

#include <sstream>

namespace hydroclose {

Metric make_metric(RationalMatrix g) {
    if (!is_symmetric(g)) throw std::invalid_argument("metric must be symmetric");
    if (determinant(g) == 0) throw std::domain_error("metric is degenerate");
    Metric m;
    m.signature = signature_of(g);
    m.g = std::move(g);
    return m;
}

RationalMatrix antidiagonal_ones(std::size_t m) {
    RationalMatrix g(m, m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) g(i, m - 1 - i) = 1;
    return g;
}

RationalMatrix offdiagonal_block_identity(std::size_t half) {
    RationalMatrix g(2 * half, 2 * half, Rational(0));
    for (std::size_t i = 0; i < half; ++i) {
        g(i, half + i) = 1;
        g(half + i, i) = 1;
    }
    return g;
}

std::string ClosureFamily::tag() const {
    std::ostringstream out;
    switch (kind) {
        case FamilyKind::multidelta:
            out << "multidelta(M=" << std::get<MultiDeltaParams>(params).streams << ")";
            break;
        case FamilyKind::waterbag: {
            out << "waterbag(a=";
            const auto& h = std::get<WaterbagParams>(params).heights;
            for (std::size_t i = 0; i < h.size(); ++i) out << (i ? "," : "") << to_string(h[i]);
            out << ")";
            break;
        }
        case FamilyKind::burby: {
            const auto& p = std::get<BurbyParams>(params);
            out << "burby(m=" << p.level << (p.branch == BurbyBranch::plus ? ",plus" : ",minus") << ")";
            break;
        }
        case FamilyKind::fourfield:
            out << "fourfield(kappa=" << to_string(std::get<FourFieldParams>(params).kappa) << ")";
            break;
        case FamilyKind::generic:
            out << "generic(mu2=" << to_string(std::get<GenericParams>(params).mu2, names) << ")";
            break;
    }
    return out.str();
}

HydroBracket alpha_beta_in_mu(const ClosureFamily& family) {
    return alpha_beta_in_mu(family.mu, family.gamma, family.nvars());
}

// ---- multi-delta ----------------------------------------------------------

MultiPoly multidelta_mu(int M, int n) {
    if (M < 2) throw std::invalid_argument("multi-delta closure needs at least two streams");
    if (n < 0) throw std::invalid_argument("negative moment index");
    const std::size_t half = static_cast<std::size_t>(M - 1);
    MultiPoly p(2 * half);
    for (std::size_t k = 0; k < half; ++k) {
        Exponents e(2 * half, 0);
        e[k] = 1;
        e[half + k] = static_cast<unsigned>(n);
        p.add_term(e, Rational(1));
    }
    return p;
}

ClosureFamily make_multidelta(int M) {
    if (M < 1) throw std::invalid_argument("multi-delta closure needs at least one stream");
    const std::size_t half = static_cast<std::size_t>(M - 1);
    ClosureFamily f;
    f.kind = FamilyKind::multidelta;
    f.nfields = 2 * static_cast<std::size_t>(M);
    f.params = MultiDeltaParams{M};
    f.metric = make_metric(offdiagonal_block_identity(half));
    f.names = indexed_names("xi", half, 2);
    auto etas = indexed_names("eta", half, 2);
    f.names.insert(f.names.end(), etas.begin(), etas.end());

    const std::size_t count = 2 * f.nfields - 2;
    f.mu.push_back(MultiPoly::constant(2 * half, Rational(1)));
    for (std::size_t n = 1; n < count; ++n)
        f.mu.push_back(M >= 2 ? multidelta_mu(M, static_cast<int>(n)) : MultiPoly(0));
    f.gamma = gamma_sequence(f.mu);
    return f;
}

ClosureFamily make_cold() { return make_multidelta(1); }

// ---- waterbag -------------------------------------------------------------

void validate_heights(std::span<const Rational> a) {
    const std::size_t N = a.size();
    if (N < 2) throw std::domain_error("waterbag needs at least two contours");
    Rational sigma(0);
    for (std::size_t k = 0; k + 1 < N; ++k) {
        sigma += a[k];
        if (sigma == 0) throw std::domain_error("degenerate heights: partial sum sigma_" + std::to_string(k + 1) + " = 0");
    }
    sigma += a[N - 1];
    if (sigma != 0) throw std::domain_error("heights must sum to zero");
    if (a[N - 1] == 0) throw std::domain_error("last height must be nonzero");
    for (std::size_t k = 1; k + 1 < N; ++k)
        if (a[k] == 0) throw std::domain_error("degenerate heights: a_" + std::to_string(k + 1) + " = 0");
}

MultiPoly waterbag_mu(std::span<const Rational> a, int n) {
    validate_heights(a);
    if (n < 0) throw std::invalid_argument("negative moment index");
    const std::size_t N = a.size();
    const std::size_t nv = N - 2;
    std::vector<Rational> sigma = partial_sums(a);

    auto nu_at = [&](std::size_t l) {
        if (l == 0) return MultiPoly(nv);
        if (l == N - 1) return MultiPoly::constant(nv, Rational(1));
        return MultiPoly::variable(nv, l - 1);
    };
    const Rational c = 1 / (2 * a[N - 1]);

    // D_k = Σ_{l=k}^{N−1} (ν_l − ν_{l−1})/σ_l, accumulated from the top.
    MultiPoly D(nv);
    MultiPoly sum(nv);
    for (std::size_t k = N - 1; k >= 1; --k) {
        Rational inv_sigma = 1 / sigma[k - 1];
        D += (nu_at(k) - nu_at(k - 1)) * inv_sigma;
        sum += pow(D + MultiPoly::constant(nv, c), static_cast<unsigned>(n + 1)) * a[k - 1];
    }
    Rational tail = 1 / (rpow(Rational(2), n + 1) * rpow(a[N - 1], n));
    sum += MultiPoly::constant(nv, tail);
    Rational front = make_rational(n % 2 == 0 ? 1 : -1, n + 1);
    return sum * front;
}

RationalMatrix waterbag_metric_matrix(std::span<const Rational> a) {
    validate_heights(a);
    const std::size_t N = a.size();
    std::vector<Rational> sigma = partial_sums(a);
    RationalMatrix g(N - 2, N - 2, Rational(0));
    for (std::size_t k = 1; k + 1 < N; ++k) g(k - 1, k - 1) = -sigma[k - 1] * sigma[k] / a[k];
    return g;
}

Metric waterbag_metric(std::span<const Rational> a) { return make_metric(waterbag_metric_matrix(a)); }

Rational waterbag_lambda(std::span<const Rational> a) {
    validate_heights(a);
    return -1 / (2 * a.back());
}

ClosureFamily make_waterbag(std::vector<Rational> a) {
    validate_heights(a);
    const std::size_t N = a.size();
    ClosureFamily f;
    f.kind = FamilyKind::waterbag;
    f.nfields = N;
    f.metric = waterbag_metric(a);
    f.names = indexed_names("nu", N - 2);
    const std::size_t count = 2 * N - 2;
    for (std::size_t n = 0; n < count; ++n) f.mu.push_back(waterbag_mu(a, static_cast<int>(n)));
    f.gamma = gamma_sequence(f.mu);
    f.params = WaterbagParams{std::move(a)};
    return f;
}

// ---- four-field -------------------------------------------------------------

FourFieldPolys fourfield_family(const Rational& kappa) {
    const MultiPoly G2 = MultiPoly::variable(2, 0);
    const MultiPoly G3 = MultiPoly::variable(2, 1);
    const MultiPoly one = MultiPoly::constant(2, Rational(1));
    const Rational k = kappa;
    const Rational k2 = k * k;

    FourFieldPolys r;
    r.mu.push_back(one);
    r.mu.push_back(G2 * G3);
    r.mu.push_back(pow(G2, 3) + G2 * pow(G3, 2) * k);
    r.mu.push_back(G2 * G3 * (pow(G2, 2) * Rational(3) + pow(G3, 2) * k) * k);
    r.mu.push_back((pow(G2, 5) * make_rational(9, 5) + pow(G2, 3) * pow(G3, 2) * (6 * k) + G2 * pow(G3, 4) * k2) * k);
    r.mu.push_back(G2 * G3 * (pow(G2, 4) * Rational(9) + pow(G2, 2) * pow(G3, 2) * (10 * k) + pow(G3, 4) * k2) * k2);

    const MultiPoly K = MultiPoly::constant(2, k);
    const MultiPoly kg = K - G2;  // (κ − Γ₂)
    r.S.push_back(one);
    r.S.push_back(MultiPoly(2));
    r.S.push_back(pow(G2, 3) + G2 * kg * pow(G3, 2));
    r.S.push_back(G2 * G3 * kg * (pow(G2, 2) * Rational(3) + (K - G2 * Rational(2)) * pow(G3, 2)));
    r.S.push_back(pow(G2, 5) * (make_rational(9, 5) * k) + pow(G2, 3) * pow(kg, 2) * pow(G3, 2) * Rational(6) +
                  G2 * kg * (MultiPoly::constant(2, k2) - G2 * kg * Rational(3)) * pow(G3, 4));
    r.S.push_back(pow(G2, 5) * kg * G3 * (9 * k) + pow(G2, 3) * pow(kg, 3) * pow(G3, 3) * Rational(10) +
                  G2 * kg * (K - G2 * Rational(2)) *
                      (MultiPoly::constant(2, k2) - G2 * (2 * k) + pow(G2, 2) * Rational(2)) * pow(G3, 5));
    return r;
}

ClosureFamily make_fourfield(const Rational& kappa) {
    ClosureFamily f;
    f.kind = FamilyKind::fourfield;
    f.nfields = 4;
    f.params = FourFieldParams{kappa};
    f.metric = make_metric(offdiagonal_block_identity(1));
    f.names = {"G2", "G3"};
    f.mu = fourfield_family(kappa).mu;
    f.gamma = gamma_sequence(f.mu);
    return f;
}

}  // namespace hydroclose
