#include "hydroclose/bracket.hpp"
#include "hydroclose/moments.hpp"

namespace hydroclose {

IdentityReport check_flatness_against(const ClosureFamily& family, const HydroBracket& expected, Execution mode) {
    IdentityReport report;
    report.subject = family.tag();
    const std::size_t K = family.nvars();
    if (K == 0) {
        report.checks.push_back({"no-microscopic-fields", true, {}});
        return report;
    }

    PolyMatrix J(K, K, MultiPoly(K));
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t n = 0; n < K; ++n) J(k, n) = diff(family.mu[k + 1], n);

    HydroBracket pulled;
    try {
        pulled = transform(flat_bracket(family.metric.g), J, mode);
    } catch (const std::domain_error& e) {
        report.checks.push_back({"jacobian", false, e.what()});
        return report;
    }
    report.append(compare_brackets(pulled, expected, "flatness", family.names, mode));
    report.append(check_invariants(expected, family.names));
    return report;
}

IdentityReport check_flatness(const ClosureFamily& family, Execution mode) {
    return check_flatness_against(family, alpha_beta_in_mu(family), mode);
}

IdentityReport check_kinetic_origin(const ClosureFamily& family, Execution mode) {
    const std::size_t N = family.nfields, K = family.nvars(), ny = K + 2;
    for (std::size_t n = 1; n < family.mu.size(); ++n) {
        auto d = homogeneous_degree(family.mu[n]);
        if (!d || (*d != kAnyDegree && *d != static_cast<int>(n) + 1))
            throw std::invalid_argument("kinetic-origin check needs mu_n homogeneous of degree n+1");
    }

    // Parameters (ρ, ψ, ν̃₁..ν̃_K); ρ^{k+1}μ_k(ν) = μ_k(ν̃) by homogeneity.
    std::vector<MultiPoly> M;
    M.push_back(MultiPoly::variable(ny, 0));
    for (std::size_t k = 1; k < family.mu.size(); ++k) M.push_back(embed(family.mu[k], ny, 2));
    const MultiPoly psi = MultiPoly::variable(ny, 1);

    const std::size_t count = 2 * N - 2;
    std::vector<MultiPoly> P;
    for (std::size_t n = 0; n < count; ++n) {
        MultiPoly s(ny);
        for (std::size_t k = 0; k <= n; ++k)
            s += M[k] * pow(psi, static_cast<unsigned>(n - k)) * binomial(static_cast<unsigned>(n), static_cast<unsigned>(k));
        P.push_back(std::move(s));
    }

    std::vector<std::string> names{"rho", "psi"};
    for (const auto& nm : family.names) names.push_back(nm + "~");

    IdentityReport report;
    report.subject = family.tag();
    HydroBracket km = reparameterize(km_bracket(N), P);
    PolyMatrix J(N, ny, MultiPoly(ny));
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t n = 0; n < ny; ++n) J(k, n) = diff(P[k], n);
    HydroBracket flat = transform(flat_bracket(full_metric(family)), J, mode);
    report.append(compare_brackets(km, flat, "kinetic", names, mode));
    return report;
}

IdentityReport check_waterbag_contours(std::span<const Rational> a, Execution mode) {
    validate_heights(a);
    const std::size_t N = a.size();
    std::vector<MultiPoly> P;
    for (std::size_t n = 0; n < 2 * N - 2; ++n) {
        MultiPoly s(N);
        for (std::size_t k = 0; k < N; ++k) s += pow(MultiPoly::variable(N, k), static_cast<unsigned>(n + 1)) * a[k];
        P.push_back(s * make_rational(-1, static_cast<long>(n) + 1));
    }
    RationalMatrix G(N, N, Rational(0));
    for (std::size_t k = 0; k < N; ++k) G(k, k) = -1 / a[k];

    PolyMatrix J(N, N, MultiPoly(N));
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t n = 0; n < N; ++n) J(k, n) = diff(P[k], n);

    IdentityReport report;
    report.subject = "waterbag contours";
    HydroBracket km = reparameterize(km_bracket(N), P);
    HydroBracket flat = transform(flat_bracket(G), J, mode);
    report.append(compare_brackets(km, flat, "contours", indexed_names("v", N), mode));
    return report;
}

}  // namespace hydroclose
