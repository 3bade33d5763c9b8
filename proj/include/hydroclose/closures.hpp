#pragma once

#include "hydroclose/hydro_bracket.hpp"
#include "hydroclose/matrix.hpp"
#include "hydroclose/multipoly.hpp"
#include "hydroclose/rational.hpp"

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hydroclose {

// Constant symmetric nondegenerate metric on the normal variables.
struct Metric {
    RationalMatrix g;
    Signature signature;
};

// Validates symmetry and nondegeneracy and records the signature.
Metric make_metric(RationalMatrix g);

RationalMatrix antidiagonal_ones(std::size_t m);
RationalMatrix offdiagonal_block_identity(std::size_t half);

enum class FamilyKind { multidelta, waterbag, burby, fourfield, generic };
enum class GammaRule { zero, waterbag, euler };
enum class BurbyBranch { plus, minus };

struct MultiDeltaParams {
    int streams = 2;
};
struct WaterbagParams {
    std::vector<Rational> heights;
};
struct BurbyParams {
    int level = 1;
    BurbyBranch branch = BurbyBranch::plus;
};
struct FourFieldParams {
    Rational kappa;
};
struct GenericParams {
    MultiPoly mu2;
    GammaRule rule = GammaRule::euler;
    Rational lambda;
};

using ClosureParams = std::variant<MultiDeltaParams, WaterbagParams, BurbyParams, FourFieldParams, GenericParams>;

// One closure: N fluid fields (ρ, u, ν₁..ν_{N−2}), the centered moments
// μ₀..μ_{2N−3} as polynomials in ν, their γ_n, and the metric on ν.
struct ClosureFamily {
    FamilyKind kind = FamilyKind::generic;
    std::size_t nfields = 2;
    Metric metric;
    std::vector<MultiPoly> mu;
    std::vector<MultiPoly> gamma;
    std::vector<std::string> names;
    ClosureParams params;

    std::size_t nvars() const { return nfields - 2; }
    std::string tag() const;
};

// Microscopic bracket of μ₁..μ_{N−2} built from the family's μ and γ.
HydroBracket alpha_beta_in_mu(const ClosureFamily& family);

// ---- multi-delta ----------------------------------------------------------

// Σ_{k=2}^{M} ξ_k η_kⁿ over (ξ₂..ξ_M, η₂..η_M).
MultiPoly multidelta_mu(int M, int n);

// M = 1 gives the cold fluid (N = 2, no normal variables).
ClosureFamily make_multidelta(int M);
ClosureFamily make_cold();

template <class T>
struct MultiDeltaNormal {
    T rho{}, u{};
    std::vector<T> xi, eta;  // k = 2..M
};

template <class T>
MultiDeltaNormal<T> multidelta_normal_map(std::span<const T> a, std::span<const T> v) {
    if (a.size() != v.size() || a.empty()) throw std::invalid_argument("stream arrays must match and be non-empty");
    MultiDeltaNormal<T> r;
    r.rho = T(0);
    T mom(0);
    for (std::size_t l = 0; l < a.size(); ++l) {
        r.rho += a[l];
        mom += a[l] * v[l];
    }
    if (!(r.rho > 0)) throw std::domain_error("nonpositive total density");
    r.u = mom / r.rho;
    for (std::size_t k = 1; k < a.size(); ++k) {
        r.xi.push_back(a[k] / r.rho);
        r.eta.push_back((v[k] - v[0]) / r.rho);
    }
    return r;
}

template <class T>
void multidelta_inverse_map(const MultiDeltaNormal<T>& n, std::vector<T>& a, std::vector<T>& v) {
    if (!(n.rho > 0)) throw std::domain_error("nonpositive total density");
    const std::size_t M = n.xi.size() + 1;
    T sum_xi(0), sum_xieta(0);
    for (std::size_t k = 0; k + 1 < M; ++k) {
        sum_xi += n.xi[k];
        sum_xieta += n.xi[k] * n.eta[k];
    }
    a.assign(M, T(0));
    v.assign(M, T(0));
    a[0] = n.rho * (T(1) - sum_xi);
    v[0] = n.u - n.rho * sum_xieta;
    for (std::size_t k = 1; k < M; ++k) {
        a[k] = n.rho * n.xi[k - 1];
        v[k] = v[0] + n.rho * n.eta[k - 1];
    }
}

// ---- waterbag -------------------------------------------------------------

// Throws std::domain_error unless Σa = 0, a_N ≠ 0, all partial sums
// σ_k (k < N) and all interior heights a_2..a_{N−1} are nonzero.
void validate_heights(std::span<const Rational> a);

MultiPoly waterbag_mu(std::span<const Rational> a, int n);
RationalMatrix waterbag_metric_matrix(std::span<const Rational> a);
Metric waterbag_metric(std::span<const Rational> a);
// Λ = −1/(2a_N).
Rational waterbag_lambda(std::span<const Rational> a);
ClosureFamily make_waterbag(std::vector<Rational> a);

template <class T>
struct WaterbagNormal {
    T rho{}, u{};
    std::vector<T> nu;  // ν₁..ν_{N−2}
};

template <class T>
std::vector<T> partial_sums(std::span<const T> a) {
    std::vector<T> s;
    T acc(0);
    for (const T& x : a) {
        acc += x;
        s.push_back(acc);
    }
    return s;
}

// (v₁..v_N) -> (ρ, u, ν): ρ = −Σa v, u = −Σa v²/(2ρ),
// ν_k = (1/ρ) Σ_{l≤k} σ_l (v_{l+1} − v_l).
template <class T>
WaterbagNormal<T> waterbag_normal_map(std::span<const T> a, std::span<const T> v) {
    const std::size_t N = a.size();
    if (v.size() != N || N < 2) throw std::invalid_argument("need matching heights and contours, N >= 2");
    WaterbagNormal<T> r;
    r.rho = T(0);
    T second(0);
    for (std::size_t n = 0; n < N; ++n) {
        r.rho -= a[n] * v[n];
        second -= a[n] * v[n] * v[n];
    }
    if (!(r.rho > 0)) throw std::domain_error("nonpositive density");
    r.u = second / (T(2) * r.rho);
    std::vector<T> sigma = partial_sums(a);
    T acc(0);
    for (std::size_t k = 0; k + 2 < N; ++k) {
        acc += sigma[k] * (v[k + 1] - v[k]);
        r.nu.push_back(acc / r.rho);
    }
    return r;
}

// Inverse map back to contour velocities, with ν₀ = 0 and ν_{N−1} = 1.
template <class T>
std::vector<T> waterbag_inverse_map(std::span<const T> a, const WaterbagNormal<T>& n) {
    const std::size_t N = a.size();
    if (n.nu.size() + 2 != N) throw std::invalid_argument("normal-variable count must be N-2");
    if (!(n.rho > 0)) throw std::domain_error("nonpositive density");
    std::vector<T> sigma = partial_sums(a);
    auto nu_at = [&](std::size_t l) -> T {
        if (l == 0) return T(0);
        if (l == N - 1) return T(1);
        return n.nu[l - 1];
    };
    // offset[k] = Σ_{l=1}^{k} (ν_l − ν_{l−1})/σ_l, contour k+1 relative to contour 1.
    std::vector<T> offset(N, T(0));
    for (std::size_t k = 1; k < N; ++k) offset[k] = offset[k - 1] + (nu_at(k) - nu_at(k - 1)) / sigma[k - 1];
    T shift(0);
    for (std::size_t k = 1; k < N; ++k) shift += a[k] * offset[k] * offset[k];
    std::vector<T> v(N);
    v[0] = n.u + n.rho / T(2) * shift;
    for (std::size_t k = 1; k < N; ++k) v[k] = v[0] + n.rho * offset[k];
    return v;
}

// ψ in terms of the contours: (a_N v_N − Σ_{n<N} a_n v_n)/(2a_N).
template <class T>
T waterbag_psi_from_contours(std::span<const T> a, std::span<const T> v) {
    const std::size_t N = a.size();
    T s = a[N - 1] * v[N - 1];
    for (std::size_t n = 0; n + 1 < N; ++n) s -= a[n] * v[n];
    return s / (T(2) * a[N - 1]);
}

// ---- Burby ------------------------------------------------------------------

// Recursive construction, a polynomial in ν₁..ν_m; 1 ≤ n ≤ m.
MultiPoly burby_mu(int m, int n);
// Closed-form tuple sum over the m+1 slots (x₀, ν₁..ν_m); 0 ≤ n ≤ m.
MultiPoly burby_mu_closed(int m, int n);
// Recursive construction over the same m+1 slots, for comparison with the
// closed form and for the slot identities.
MultiPoly burby_mu_slots(int m, int n);

ClosureFamily make_burby(int m, BurbyBranch branch = BurbyBranch::plus);

// Back-substitution remainder: μ_n with ν_n set to zero, so that
// ν_n = (μ_n − R_n(ν_{n+1}..ν_m)) / ν_mⁿ.
MultiPoly burby_remainder(int m, int n);

struct BurbyInverseTables {
    int m = 0;
    std::vector<CompiledPoly> remainder;  // index n = 1..m−1
};
const BurbyInverseTables& burby_inverse_tables(int m);

namespace detail {

inline double real_root(double x, unsigned k) {
    if (x < 0) return -std::pow(-x, 1.0 / k);
    return std::pow(x, 1.0 / k);
}

inline Rational real_root(const Rational& x, unsigned k) {
    auto r = exact_root(x, k);
    if (!r) throw std::domain_error("leading moment is not a perfect power; exact inversion unavailable");
    return *r;
}

template <class T>
T eval_remainder(int m, int n, std::span<const T> nu);

template <>
inline double eval_remainder<double>(int m, int n, std::span<const double> nu) {
    return burby_inverse_tables(m).remainder[static_cast<std::size_t>(n)](nu.data());
}

template <>
inline Rational eval_remainder<Rational>(int m, int n, std::span<const Rational> nu) {
    return eval(burby_remainder(m, n), nu);
}

}  // namespace detail

// ν from μ₁..μ_m. The minus branch inverts μ̄_n = (−1)ⁿμ_n, which covers
// μ_m < 0 at odd m. Rational input requires (m+1)|μ_m| to be a perfect
// (m+1)-th power.
template <class T>
std::vector<T> burby_invert(std::span<const T> mu, int m, BurbyBranch branch = BurbyBranch::plus) {
    if (m < 1 || mu.size() != static_cast<std::size_t>(m)) throw std::invalid_argument("need mu_1..mu_m");
    std::vector<T> w(mu.begin(), mu.end());
    if (branch == BurbyBranch::minus)
        for (std::size_t n = 1; n <= w.size(); n += 2) w[n - 1] = -w[n - 1];
    const T& lead = w.back();
    if (lead == 0) throw std::domain_error("singular leading moment mu_m = 0");
    if (m % 2 == 1 && lead < 0)
        throw std::domain_error("odd level with negative leading moment needs the minus branch");
    std::vector<T> nu(static_cast<std::size_t>(m), T(0));
    const T top = detail::real_root(T(m + 1) * lead, static_cast<unsigned>(m + 1));
    nu.back() = top;
    std::vector<T> top_powers{T(1)};
    for (int n = 1; n < m; ++n) top_powers.push_back(top_powers.back() * top);
    for (int n = m - 1; n >= 1; --n) {
        // Remainder only involves ν_{n+1}..ν_m, which are already known.
        const T rest = detail::eval_remainder<T>(m, n, std::span<const T>(nu));
        nu[static_cast<std::size_t>(n - 1)] = (w[static_cast<std::size_t>(n - 1)] - rest) / top_powers[static_cast<std::size_t>(n)];
    }
    return nu;
}

// ---- four-field -------------------------------------------------------------

struct FourFieldPolys {
    std::vector<MultiPoly> mu;  // μ₀..μ₅ over (Γ₂, Γ₃)
    std::vector<MultiPoly> S;   // S₀..S₅
};

FourFieldPolys fourfield_family(const Rational& kappa);
ClosureFamily make_fourfield(const Rational& kappa);

// ---- generic μ₂ generator --------------------------------------------------

// μ₁ = ½ ν·g⁻¹ν.
MultiPoly quadratic_mu1(const RationalMatrix& g);

// μ₀..μ_{n_max} from μ₂ through
// μ_{n+1} = [∂_kμ_n g_kl ∂_lμ₂ + 2μ₁γ_n + nμ_{n−1}γ₂]/(n+2).
// Rule waterbag uses γ_n = Λⁿ − nΛμ_{n−1}; rule euler recomputes γ_n from
// the sequence itself. mu1 overrides the quadratic μ₁ when given.
std::vector<MultiPoly> generate_closure_from_mu2(const MultiPoly& mu2, const RationalMatrix& g, GammaRule rule,
                                                 int n_max, const Rational& lambda = Rational(0),
                                                 const std::optional<MultiPoly>& mu1 = std::nullopt);

ClosureFamily make_generic(const MultiPoly& mu2, const RationalMatrix& g, GammaRule rule,
                           const Rational& lambda = Rational(0), const std::optional<MultiPoly>& mu1 = std::nullopt);

// Family μ₂, γ-rule and Λ suitable for seeding the generator.
struct GeneratorSeed {
    MultiPoly mu2;
    RationalMatrix g;
    GammaRule rule;
    Rational lambda;
};
GeneratorSeed generator_seed(const ClosureFamily& family);

// ---- equation of state -------------------------------------------------------

struct EquationOfState {
    std::vector<double> nu;               // recovered normal variables
    std::vector<double> closure_moments;  // μ_{N−1}..μ_{2N−3}
    int iterations = 0;
    double residual = 0.0;
};

struct NewtonOptions {
    int max_iterations = 100;
    double tolerance = 1e-12;
    int restarts = 16;
};

// Recovers ν from μ₁..μ_{N−2} (exact back-substitution for Burby, damped
// Newton otherwise) and evaluates the higher moments.
EquationOfState equation_of_state(const ClosureFamily& family, std::span<const double> mu_observed,
                                  const NewtonOptions& options = {});

// Newton inversion of ν -> (μ₁..μ_{N−2}) from a given start point.
std::optional<EquationOfState> newton_invert(const ClosureFamily& family, std::span<const double> mu_observed,
                                             std::vector<double> start, const NewtonOptions& options);

}  // namespace hydroclose
