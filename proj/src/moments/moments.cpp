#include "hydroclose/moments.hpp"

namespace hydroclose {

MultiPoly gamma_n(const MultiPoly& mu_n, unsigned n) {
    return mu_n * Rational(n + 1) - euler_operator(mu_n);
}

std::vector<MultiPoly> gamma_sequence(std::span<const MultiPoly> mu) {
    std::vector<MultiPoly> g;
    g.reserve(mu.size());
    for (std::size_t n = 0; n < mu.size(); ++n) g.push_back(gamma_n(mu[n], static_cast<unsigned>(n)));
    return g;
}

namespace {

const MultiPoly& at_or_zero(std::span<const MultiPoly> list, std::size_t i, const MultiPoly& zero) {
    return i < list.size() ? list[i] : zero;
}

HydroBracket build(std::span<const MultiPoly> mu, std::span<const MultiPoly> gamma, std::size_t nfields,
                   bool swapped) {
    if (mu.empty()) throw std::invalid_argument("empty moment list");
    const std::size_t nv = mu[0].nvars();
    const MultiPoly zero(nv);
    HydroBracket b = HydroBracket::zero(nfields, nv);

    // Derivative tables, reused across cells.
    std::vector<std::vector<MultiPoly>> dmu(2 * nfields + 1), dgamma(nfields + 1);
    for (std::size_t k = 0; k < dmu.size(); ++k)
        for (std::size_t j = 0; j < nv; ++j) dmu[k].push_back(diff(at_or_zero(mu, k, zero), j));
    for (std::size_t k = 0; k < dgamma.size(); ++k)
        for (std::size_t j = 0; j < nv; ++j) dgamma[k].push_back(diff(at_or_zero(gamma, k, zero), j));

    for (std::size_t n = 1; n <= nfields; ++n) {
        for (std::size_t m = 1; m <= nfields; ++m) {
            const MultiPoly& mu_nm = at_or_zero(mu, n + m - 1, zero);
            const MultiPoly& mu_n1 = at_or_zero(mu, n - 1, zero);
            const MultiPoly& mu_m1 = at_or_zero(mu, m - 1, zero);
            const MultiPoly& g_n = at_or_zero(gamma, n, zero);
            const MultiPoly& g_m = at_or_zero(gamma, m, zero);

            b.alpha(n - 1, m - 1) = mu_nm * Rational(n + m) - mu_m1 * g_n * Rational(m) - mu_n1 * g_m * Rational(n);

            const Rational lead(swapped ? m : n);
            for (std::size_t j = 0; j < nv; ++j) {
                b.beta_at(n - 1, m - 1, j) =
                    dmu[n + m - 1][j] * lead - dmu[n - 1][j] * g_m * Rational(n) - mu_m1 * dgamma[n][j] * Rational(m);
            }
        }
    }
    return b;
}

}  // namespace

HydroBracket alpha_beta_in_mu(std::span<const MultiPoly> mu, std::span<const MultiPoly> gamma, std::size_t nfields) {
    return build(mu, gamma, nfields, false);
}

HydroBracket alpha_beta_in_mu_swapped_index(std::span<const MultiPoly> mu, std::span<const MultiPoly> gamma,
                                            std::size_t nfields) {
    return build(mu, gamma, nfields, true);
}

}  // namespace hydroclose
