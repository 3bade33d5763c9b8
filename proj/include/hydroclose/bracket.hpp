#pragma once

#include "hydroclose/closures.hpp"
#include "hydroclose/hydro_bracket.hpp"
#include "hydroclose/matrix.hpp"

#include <string>
#include <vector>

namespace hydroclose {

enum class Execution { serial, parallel };

struct IdentityCheck {
    std::string name;
    bool passed = true;
    std::string residual;  // canonical text of the nonzero residual, if any
};

struct IdentityReport {
    std::string subject;
    std::vector<IdentityCheck> checks;

    std::size_t failures() const;
    bool all_passed() const { return failures() == 0; }
    void append(const IdentityReport& other);
};

// Truncated Kupershmidt–Manin bracket on fields P₀..P_{N−1}, written over
// the parameters P₀..P_{2N−3}: α_nm = (n+m)P_{n+m−1}, β_nmk = n[k = n+m−1].
HydroBracket km_bracket(std::size_t N);

// Constant metric G, fields = parameters, β = 0.
HydroBracket flat_bracket(const RationalMatrix& G);

// Change of fields u -> y with J_kn = ∂y_k/∂u_n given as polynomials in the
// bracket's parameters. Throws std::domain_error if J is singular.
HydroBracket transform(const HydroBracket& b, const PolyMatrix& jacobian, Execution mode = Execution::parallel);

// Express the parameters x_j as polynomials images[j] of new parameters.
HydroBracket reparameterize(const HydroBracket& b, std::span<const MultiPoly> images);

// α = αᵗ and ∂_jα_nm = β_nmj + β_mnj.
IdentityReport check_invariants(const HydroBracket& b, const std::vector<std::string>& param_names = {});

// Cellwise equality of two brackets on the same fields and parameters.
IdentityReport compare_brackets(const HydroBracket& lhs, const HydroBracket& rhs, const std::string& label,
                                const std::vector<std::string>& param_names = {},
                                Execution mode = Execution::parallel);

// Flatness identities for a closure: the bracket of μ₁..μ_{N−2} obtained
// from the constant metric g by the change ν -> μ(ν) must equal the (α, β)
// given by the centered-moment formulas, together with the invariants.
IdentityReport check_flatness(const ClosureFamily& family, Execution mode = Execution::parallel);

// Same comparison against a caller-supplied expected bracket (used to show
// that a different β index placement fails).
IdentityReport check_flatness_against(const ClosureFamily& family, const HydroBracket& expected,
                                      Execution mode = Execution::parallel);

// The truncated KM bracket pulled back through P_n(ρ, ψ, ν̃) equals the flat
// bracket g₀ ⊕ g in (ρ, ψ, ν̃ = ρν). Needs μ_n homogeneous of degree n+1.
IdentityReport check_kinetic_origin(const ClosureFamily& family, Execution mode = Execution::parallel);

// KM bracket pulled back to the contour velocities of a waterbag equals the
// diagonal bracket α_nn = −1/a_n.
IdentityReport check_waterbag_contours(std::span<const Rational> heights, Execution mode = Execution::parallel);

// (ρ, ψ) block [[0,1],[1,0]] ⊕ g: the metric of the full bracket.
RationalMatrix full_metric(const ClosureFamily& family);

Signature signature(const Metric& g);
Signature full_signature(const ClosureFamily& family);

enum class CasimirKind { mass, psi, normal };

struct CasimirDensity {
    CasimirKind kind = CasimirKind::mass;
    std::size_t index = 0;  // k for ∫ρν_k
    std::string expression;
};

struct CasimirSet {
    std::vector<CasimirDensity> densities;
};

// ∫ρ, ∫(u − ½ρ ν·g⁻¹ν) and ∫ρν_k, with text expressions in (rho, u, ν).
CasimirSet casimirs(const ClosureFamily& family);

// Density values at one point in (ρ, u, ν), in the order of casimirs().
std::vector<double> casimir_density_values(const ClosureFamily& family, double rho, double u,
                                           std::span<const double> nu);

}  // namespace hydroclose
