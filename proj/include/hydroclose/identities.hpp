#pragma once

#include "hydroclose/bracket.hpp"
#include "hydroclose/closures.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hydroclose {

// burby_mu(m, n) == burby_mu_closed(m, n) == burby_mu_slots(m, n), 1 ≤ n ≤ m.
IdentityReport check_burby_recursion(int m);

// ∂μ_n^{(m)}/∂ν_k = n μ_{n−1}^{(k−1)} with slots shifted by m−k+1, for
// n ≤ k ≤ m, and ∂μ_n^{(m)}/∂ν_k = 0 for k < n.
IdentityReport check_burby_derivatives(int m);

// ∂_jμ_k · ∂_{m+1−j}μ_l = 0 whenever k + l > m + 1.
IdentityReport check_burby_support(int m);

// Round trip ν -> μ -> ν: exactly at rational points (where (m+1)μ_m is
// always a perfect power) and in floating point at `samples` random points
// with relative error below 1e−12.
IdentityReport check_burby_inversion(int m, BurbyBranch branch, int samples = 100, std::uint64_t seed = 0x5eed);

// Waterbag: γ_n = Λⁿ − nΛμ_{n−1}. Homogeneous families: γ_n = 0. Generic
// families: the stored γ equals the one recomputed from μ.
IdentityReport check_gamma(const ClosureFamily& family);

// Constant term of S_n equals (1 + (−1)ⁿ)/((n+1)2^{n+1}a_Nⁿ).
IdentityReport check_waterbag_s_constants(std::span<const Rational> heights);

// Signatures the family is known to have (empty when there is no claim).
struct SignatureClaim {
    std::vector<Signature> full;   // any of these
    std::optional<Signature> micro;
};
SignatureClaim expected_signature(const ClosureFamily& family);
IdentityReport check_signature(const ClosureFamily& family);

// μ_n of the family for any n ≥ 0, beyond the stored list where the family
// has a closed form; nullopt otherwise.
std::optional<MultiPoly> reference_mu(const ClosureFamily& family, int n);

// generate_closure_from_mu2 seeded with the family's (μ₂, g, γ-rule)
// reproduces μ₃..μ_{n_max} with n_max = max(5, 2N−3) where known.
IdentityReport check_generator(const ClosureFamily& family);

// μ_n homogeneous of degree n+1 (all families but waterbag).
IdentityReport check_homogeneity(const ClosureFamily& family);

// Four-field: tabulated S from tabulated μ, both recursions, Jacobi constraints
// on S₄, S₅ (multiplied through by the Jacobian determinant) and the κ = 0
// reduction to Burby level 2.
IdentityReport check_fourfield(const Rational& kappa);

struct VerifyOptions {
    Execution mode = Execution::parallel;
    int inversion_samples = 100;
    std::uint64_t seed = 0x5eed;
};

// Every identity that applies to the family.
IdentityReport verify_family(const ClosureFamily& family, const VerifyOptions& options = {});

}  // namespace hydroclose
