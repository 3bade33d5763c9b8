#include "hydroclose/closures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hydroclose {

namespace {

// Dense solve with partial pivoting; false when numerically singular.
bool solve_dense(std::vector<double> a, std::vector<double> b, std::size_t n, std::vector<double>& x) {
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r * n + c]) > std::abs(a[p * n + c])) p = r;
        if (std::abs(a[p * n + c]) < 1e-300) return false;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[p * n + j], a[c * n + j]);
            std::swap(b[p], b[c]);
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            double f = a[r * n + c] / a[c * n + c];
            for (std::size_t j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
            b[r] -= f * b[c];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
        x[i] = s / a[i * n + i];
    }
    return true;
}

struct CompiledMap {
    std::vector<CompiledPoly> value;     // μ₁..μ_K
    std::vector<CompiledPoly> jacobian;  // row-major K×K
};

CompiledMap compile_map(const ClosureFamily& f) {
    const std::size_t K = f.nvars();
    CompiledMap m;
    for (std::size_t i = 0; i < K; ++i) {
        m.value.emplace_back(f.mu[i + 1]);
        for (std::size_t j = 0; j < K; ++j) m.jacobian.emplace_back(diff(f.mu[i + 1], j));
    }
    return m;
}

double residual_norm(const CompiledMap& m, const std::vector<double>& nu, std::span<const double> target,
                     std::vector<double>& F) {
    F.resize(target.size());
    double r = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) {
        F[i] = m.value[i](nu.data()) - target[i];
        r = std::max(r, std::abs(F[i]));
    }
    return r;
}

bool in_domain(const ClosureFamily& f, const std::vector<double>& nu) {
    if (f.kind == FamilyKind::multidelta) {
        const std::size_t half = nu.size() / 2;
        double s = 0.0;
        for (std::size_t k = 0; k < half; ++k) {
            if (!(nu[k] > 0.0)) return false;
            s += nu[k];
        }
        return s < 1.0;
    }
    if (f.kind == FamilyKind::waterbag) {
        // Contour ordering: (ν_l − ν_{l−1})/σ_l > 0 for l = 1..N−1.
        const auto& a = std::get<WaterbagParams>(f.params).heights;
        const std::size_t N = a.size();
        Rational sigma(0);
        for (std::size_t l = 1; l < N; ++l) {
            sigma += a[l - 1];
            double hi = l == N - 1 ? 1.0 : nu[l - 1];
            double lo = l == 1 ? 0.0 : nu[l - 2];
            if (!((hi - lo) / sigma.get_d() > 0.0)) return false;
        }
    }
    return true;
}

double seed_scale(std::span<const double> mu) {
    if (mu.size() >= 2 && mu[1] != 0.0) return std::cbrt(mu[1]);
    if (!mu.empty() && mu[0] != 0.0) return std::sqrt(std::abs(mu[0]));
    return 1.0;
}

std::vector<double> primary_seed(const ClosureFamily& f, std::span<const double> mu) {
    const std::size_t K = f.nvars();
    const double s = seed_scale(mu);
    std::vector<double> nu(K, s);
    switch (f.kind) {
        case FamilyKind::multidelta: {
            const std::size_t half = K / 2;
            const double M = static_cast<double>(half + 1);
            for (std::size_t k = 0; k < half; ++k) {
                nu[k] = 1.0 / M;
                nu[half + k] = s * static_cast<double>(k + 1);
            }
            break;
        }
        case FamilyKind::waterbag:
            for (std::size_t k = 0; k < K; ++k) nu[k] = static_cast<double>(k + 1) / static_cast<double>(K + 1);
            break;
        case FamilyKind::fourfield:
            nu[0] = s;
            nu[1] = s != 0.0 ? mu[0] / s : 0.0;
            break;
        default:
            break;
    }
    return nu;
}

std::vector<double> random_seed(const ClosureFamily& f, std::span<const double> mu, std::mt19937_64& rng) {
    const std::size_t K = f.nvars();
    const double s = std::max(1.0, std::abs(seed_scale(mu)));
    std::uniform_real_distribution<double> wide(-2.0 * s, 2.0 * s), unit(0.0, 1.0);
    std::vector<double> nu(K);
    if (f.kind == FamilyKind::multidelta) {
        const std::size_t half = K / 2;
        for (std::size_t k = 0; k < half; ++k) {
            nu[k] = unit(rng) / static_cast<double>(half + 1);
            nu[half + k] = wide(rng);
        }
    } else if (f.kind == FamilyKind::waterbag) {
        for (double& x : nu) x = unit(rng);
        std::sort(nu.begin(), nu.end());
    } else {
        for (double& x : nu) x = wide(rng);
    }
    return nu;
}

EquationOfState finish(const ClosureFamily& f, std::vector<double> nu, int iterations, double residual) {
    EquationOfState r;
    r.iterations = iterations;
    r.residual = residual;
    for (std::size_t n = f.nfields - 1; n < f.mu.size(); ++n) r.closure_moments.push_back(eval(f.mu[n], std::span<const double>(nu)));
    r.nu = std::move(nu);
    return r;
}

}  // namespace

std::optional<EquationOfState> newton_invert(const ClosureFamily& family, std::span<const double> mu_observed,
                                             std::vector<double> nu, const NewtonOptions& options) {
    const std::size_t K = family.nvars();
    if (mu_observed.size() != K || nu.size() != K) throw std::invalid_argument("moment count must equal N-2");
    const CompiledMap map = compile_map(family);
    double scale = 1.0;
    for (double m : mu_observed) scale = std::max(scale, std::abs(m));
    const double tol = options.tolerance * scale;

    std::vector<double> F, trial_F, J(K * K), step;
    double r = residual_norm(map, nu, mu_observed, F);
    for (int it = 0; it <= options.max_iterations; ++it) {
        if (!std::isfinite(r)) return std::nullopt;
        if (r <= tol) return finish(family, std::move(nu), it, r);
        if (it == options.max_iterations) break;
        for (std::size_t i = 0; i < K * K; ++i) J[i] = map.jacobian[i](nu.data());
        std::vector<double> rhs(F.size());
        for (std::size_t i = 0; i < F.size(); ++i) rhs[i] = -F[i];
        if (!solve_dense(J, rhs, K, step)) return std::nullopt;

        // Backtracking on the max-norm residual.
        double t = 1.0;
        std::vector<double> trial(K);
        double rt = r;
        while (t > 1e-10) {
            for (std::size_t i = 0; i < K; ++i) trial[i] = nu[i] + t * step[i];
            rt = residual_norm(map, trial, mu_observed, trial_F);
            if (std::isfinite(rt) && rt < (1.0 - 1e-4 * t) * r) break;
            t *= 0.5;
        }
        if (t <= 1e-10) return std::nullopt;
        nu = trial;
        F = trial_F;
        r = rt;
    }
    return std::nullopt;
}

EquationOfState equation_of_state(const ClosureFamily& family, std::span<const double> mu_observed,
                                  const NewtonOptions& options) {
    const std::size_t K = family.nvars();
    if (mu_observed.size() != K) throw std::invalid_argument("expected mu_1..mu_{N-2}");
    if (K == 0) return finish(family, {}, 0, 0.0);

    if (family.kind == FamilyKind::burby) {
        const auto& p = std::get<BurbyParams>(family.params);
        std::vector<double> nu = burby_invert<double>(mu_observed, p.level, p.branch);
        double r = 0.0;
        for (std::size_t i = 0; i < K; ++i)
            r = std::max(r, std::abs(eval(family.mu[i + 1], std::span<const double>(nu)) - mu_observed[i]));
        return finish(family, std::move(nu), 0, r);
    }

    std::mt19937_64 rng(0x5eed);
    std::vector<double> start = primary_seed(family, mu_observed);
    for (int attempt = 0; attempt <= options.restarts; ++attempt) {
        if (attempt > 0) start = random_seed(family, mu_observed, rng);
        auto sol = newton_invert(family, mu_observed, start, options);
        if (sol && in_domain(family, sol->nu)) return *sol;
    }
    throw std::runtime_error("equation of state: Newton inversion did not converge inside the admissible domain");
}

}  // namespace hydroclose
