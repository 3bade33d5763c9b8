#pragma once

#include "hydroclose/hydro_bracket.hpp"
#include "hydroclose/multipoly.hpp"
#include "hydroclose/rational.hpp"
#include "hydroclose/scalar.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace hydroclose {

enum class CenterKind { velocity, psi };

// Moments recentered about u (kind velocity, values S₂, S₃, ...) or about
// ψ = u − ρμ₁ (kind psi, values μ₁, μ₂, ...). S₀ = μ₀ = 1 and S₁ = 0 are
// implicit.
template <class T>
struct CenteredMoments {
    CenterKind kind = CenterKind::velocity;
    T rho{};
    T center{};
    std::vector<T> values;
};

// c_n = ρ^{-(n+1)} Σ_k C(n,k) P_k (−c)^{n−k} for n = 0..P.size()-1.
template <class T>
std::vector<T> recenter(std::span<const T> P, const T& rho, const T& c) {
    require_positive_density(rho);
    const T inv_rho = reciprocal(rho);
    const T minus_c = -c;
    std::vector<T> out;
    out.reserve(P.size());
    T scale_n = inv_rho;
    for (std::size_t n = 0; n < P.size(); ++n) {
        T sum = zero_like(rho);
        for (std::size_t k = 0; k <= n; ++k)
            sum += scale(P[k] * ipow(minus_c, static_cast<unsigned>(n - k)), binomial(n, k));
        out.push_back(sum * scale_n);
        scale_n *= inv_rho;
    }
    return out;
}

// P_n = Σ_k C(n,k) c_k ρ^{k+1} center^{n−k}; a ring formula, so it also
// runs on polynomials.
template <class T>
std::vector<T> uncenter(const T& rho, const T& center, std::span<const T> c) {
    require_positive_density(rho);
    std::vector<T> P;
    P.reserve(c.size());
    for (std::size_t n = 0; n < c.size(); ++n) {
        T sum = zero_like(rho);
        for (std::size_t k = 0; k <= n; ++k)
            sum += scale(c[k] * ipow(rho, static_cast<unsigned>(k + 1)) * ipow(center, static_cast<unsigned>(n - k)),
                         binomial(n, k));
        P.push_back(sum);
    }
    return P;
}

template <class T>
CenteredMoments<T> s_from_p(std::span<const T> P) {
    if (P.size() < 2) throw std::invalid_argument("need at least P0 and P1");
    require_positive_density(P[0]);
    CenteredMoments<T> s;
    s.kind = CenterKind::velocity;
    s.rho = P[0];
    s.center = P[1] * reciprocal(P[0]);
    std::vector<T> all = recenter(P, s.rho, s.center);
    s.values.assign(all.begin() + 2, all.end());
    return s;
}

template <class T>
std::vector<T> p_from_s(const CenteredMoments<T>& s) {
    if (s.kind != CenterKind::velocity) throw std::invalid_argument("expected velocity-centered moments");
    std::vector<T> c;
    c.reserve(s.values.size() + 2);
    c.push_back(one_like(s.rho));
    c.push_back(zero_like(s.rho));
    c.insert(c.end(), s.values.begin(), s.values.end());
    return uncenter<T>(s.rho, s.center, c);
}

template <class T>
CenteredMoments<T> mu_from_p(std::span<const T> P, const T& psi) {
    if (P.empty()) throw std::invalid_argument("empty moment vector");
    require_positive_density(P[0]);
    CenteredMoments<T> m;
    m.kind = CenterKind::psi;
    m.rho = P[0];
    m.center = psi;
    std::vector<T> all = recenter(P, m.rho, psi);
    m.values.assign(all.begin() + 1, all.end());
    return m;
}

template <class T>
std::vector<T> p_from_mu(const CenteredMoments<T>& m) {
    if (m.kind != CenterKind::psi) throw std::invalid_argument("expected psi-centered moments");
    std::vector<T> c;
    c.reserve(m.values.size() + 1);
    c.push_back(one_like(m.rho));
    c.insert(c.end(), m.values.begin(), m.values.end());
    return uncenter<T>(m.rho, m.center, c);
}

// S_n = Σ_k C(n,k) (−μ₁)^{n−k} μ_k from the list μ₀..μ_K; returns S₀..S_K.
template <class T>
std::vector<T> s_from_mu(std::span<const T> mu) {
    if (mu.size() < 2) throw std::invalid_argument("need at least mu0 and mu1");
    const T minus_mu1 = -mu[1];
    std::vector<T> S;
    S.reserve(mu.size());
    for (std::size_t n = 0; n < mu.size(); ++n) {
        T sum = zero_like(mu[0]);
        for (std::size_t k = 0; k <= n; ++k)
            sum += scale(mu[k] * ipow(minus_mu1, static_cast<unsigned>(n - k)), binomial(n, k));
        S.push_back(sum);
    }
    return S;
}

// γ_n = (n+1)μ_n − Σ_k ν_k ∂μ_n/∂ν_k.
MultiPoly gamma_n(const MultiPoly& mu_n, unsigned n);

// γ₀..γ_K for the list μ₀..μ_K.
std::vector<MultiPoly> gamma_sequence(std::span<const MultiPoly> mu);

// Bracket of the microscopic fields μ₁..μ_{nfields} in the normal variables:
//   α_nm  = (n+m)μ_{n+m−1} − mμ_{m−1}γ_n − nμ_{n−1}γ_m
//   β_nmj = n∂_jμ_{n+m−1} − n∂_jμ_{n−1}γ_m − mμ_{m−1}∂_jγ_n
// where β_nmj multiplies ∂ₓν_j. mu and gamma are indexed from 0 and must
// reach index 2·nfields − 1; entries past the end of mu are taken as zero.
HydroBracket alpha_beta_in_mu(std::span<const MultiPoly> mu, std::span<const MultiPoly> gamma, std::size_t nfields);

// Same α with the alternative β_nmj = m∂_jμ_{n+m−1} − ... index placement.
// Only used to show that this placement breaks the flatness identities.
HydroBracket alpha_beta_in_mu_swapped_index(std::span<const MultiPoly> mu, std::span<const MultiPoly> gamma,
                                            std::size_t nfields);

}  // namespace hydroclose
