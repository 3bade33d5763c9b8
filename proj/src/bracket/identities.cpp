#include "hydroclose/identities.hpp"
#include "hydroclose/moments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace hydroclose {

namespace {

IdentityCheck poly_check(const std::string& name, const MultiPoly& residual, std::span<const std::string> names = {}) {
    return {name, residual.is_zero(), residual.is_zero() ? std::string{} : to_string(residual, names)};
}

IdentityCheck bool_check(const std::string& name, bool ok, const std::string& detail = {}) {
    return {name, ok, ok ? std::string{} : detail};
}

std::string label(const std::string& head, std::initializer_list<int> idx) {
    std::ostringstream out;
    out << head << '[';
    bool first = true;
    for (int i : idx) {
        out << (first ? "" : ",") << i;
        first = false;
    }
    out << ']';
    return out.str();
}

// μ_{n−1}^{(k−1)} over slots x₀..x_{k−1}.
MultiPoly lower_level(int k, int n) {
    if (k == 1) return MultiPoly::variable(1, 0);
    if (n - 1 > k - 1) return MultiPoly(static_cast<std::size_t>(k));
    return burby_mu_slots(k - 1, n - 1);
}

}  // namespace

IdentityReport check_burby_recursion(int m) {
    IdentityReport r;
    r.subject = "burby recursion m=" + std::to_string(m);
    const auto names = indexed_names("x", static_cast<std::size_t>(m) + 1, 0);
    for (int n = 1; n <= m; ++n) {
        const MultiPoly closed = burby_mu_closed(m, n);
        r.checks.push_back(poly_check(label("closed-vs-slots", {m, n}), closed - burby_mu_slots(m, n), names));
        const MultiPoly lifted = embed(burby_mu(m, n), static_cast<std::size_t>(m) + 1, 1);
        r.checks.push_back(poly_check(label("closed-vs-recursive", {m, n}), closed - lifted, names));
    }
    return r;
}

IdentityReport check_burby_derivatives(int m) {
    IdentityReport r;
    r.subject = "burby derivative identity m=" + std::to_string(m);
    const std::size_t nv = static_cast<std::size_t>(m);
    const auto names = indexed_names("nu", nv);
    for (int n = 1; n <= m; ++n) {
        const MultiPoly mu = burby_mu(m, n);
        for (int k = 1; k <= m; ++k) {
            const MultiPoly lhs = diff(mu, static_cast<std::size_t>(k - 1));
            MultiPoly rhs(nv);
            if (k >= n) {
                // Slot j of level k−1 becomes ν_{j+m−k+1}, i.e. variable j+m−k.
                std::vector<MultiPoly> images;
                for (int j = 0; j < k; ++j) images.push_back(MultiPoly::variable(nv, static_cast<std::size_t>(j + m - k)));
                rhs = compose(lower_level(k, n), images) * Rational(n);
            }
            r.checks.push_back(poly_check(label("d mu_n/d nu_k", {m, n, k}), lhs - rhs, names));
        }
    }
    return r;
}

IdentityReport check_burby_support(int m) {
    IdentityReport r;
    r.subject = "burby support m=" + std::to_string(m);
    const auto names = indexed_names("nu", static_cast<std::size_t>(m));
    std::vector<MultiPoly> mu;
    for (int n = 1; n <= m; ++n) mu.push_back(burby_mu(m, n));
    for (int k = 1; k <= m; ++k)
        for (int l = 1; l <= m; ++l) {
            if (k + l <= m + 1) continue;
            MultiPoly sum(static_cast<std::size_t>(m));
            for (int j = 1; j <= m; ++j)
                sum += diff(mu[k - 1], static_cast<std::size_t>(j - 1)) * diff(mu[l - 1], static_cast<std::size_t>(m - j));
            // Each product vanishes separately; the sum is what the bracket sees.
            bool each = true;
            for (int j = 1; j <= m; ++j)
                each = each && (diff(mu[k - 1], static_cast<std::size_t>(j - 1)) *
                                diff(mu[l - 1], static_cast<std::size_t>(m - j)))
                                   .is_zero();
            r.checks.push_back(poly_check(label("support", {m, k, l}), sum, names));
            r.checks.push_back(bool_check(label("support-termwise", {m, k, l}), each, "a product is nonzero"));
        }
    return r;
}

IdentityReport check_burby_inversion(int m, BurbyBranch branch, int samples, std::uint64_t seed) {
    IdentityReport r;
    r.subject = "burby inversion m=" + std::to_string(m) + (branch == BurbyBranch::plus ? " plus" : " minus");
    const ClosureFamily f = make_burby(m, branch);
    const std::size_t nv = static_cast<std::size_t>(m);
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(m));
    // Odd levels fix the sign of ν_m through an even root; keep ν_m > 0 there.
    const bool positive_top = m % 2 == 1;

    std::uniform_int_distribution<long> num(-9, 9), den(1, 7), top_num(1, 9);
    int exact_fail = 0;
    std::string exact_detail;
    for (int s = 0; s < samples; ++s) {
        std::vector<Rational> nu(nv);
        for (std::size_t k = 0; k < nv; ++k) nu[k] = make_rational(num(rng), den(rng));
        long top = positive_top ? top_num(rng) : num(rng);
        if (top == 0) top = 1;
        nu.back() = make_rational(top, den(rng));
        std::vector<Rational> mu;
        for (std::size_t n = 1; n <= nv; ++n) mu.push_back(eval(f.mu[n], nu));
        const std::vector<Rational> back = burby_invert<Rational>(mu, m, branch);
        if (back != nu) {
            ++exact_fail;
            if (exact_detail.empty()) exact_detail = "first mismatch at sample " + std::to_string(s);
        }
    }
    r.checks.push_back(bool_check("exact round trip (" + std::to_string(samples) + " rational points)", exact_fail == 0,
                                  exact_detail));

    std::uniform_real_distribution<double> body(-1.0, 1.0), lead(0.5, 1.5);
    std::bernoulli_distribution flip(0.5);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        std::vector<double> nu(nv);
        for (std::size_t k = 0; k < nv; ++k) nu[k] = body(rng);
        nu.back() = lead(rng) * ((positive_top || !flip(rng)) ? 1.0 : -1.0);
        std::vector<double> mu;
        for (std::size_t n = 1; n <= nv; ++n) mu.push_back(eval(f.mu[n], std::span<const double>(nu)));
        const std::vector<double> back = burby_invert<double>(mu, m, branch);
        double err = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < nv; ++k) {
            err = std::max(err, std::abs(back[k] - nu[k]));
            scale = std::max(scale, std::abs(nu[k]));
        }
        worst = std::max(worst, err / scale);
    }
    std::ostringstream detail;
    detail << "max relative error " << worst;
    r.checks.push_back({"float round trip (" + std::to_string(samples) + " points) < 1e-12", worst < 1e-12, detail.str()});
    return r;
}

IdentityReport check_gamma(const ClosureFamily& family) {
    IdentityReport r;
    r.subject = family.tag();
    const std::vector<MultiPoly> recomputed = gamma_sequence(family.mu);
    const std::size_t nv = family.nvars();
    for (std::size_t n = 0; n < family.mu.size(); ++n) {
        MultiPoly expected(nv);
        std::string name;
        switch (family.kind) {
            case FamilyKind::waterbag: {
                const Rational lambda = waterbag_lambda(std::get<WaterbagParams>(family.params).heights);
                expected = MultiPoly::constant(nv, rpow(lambda, static_cast<int>(n)));
                if (n >= 1) expected -= family.mu[n - 1] * (lambda * static_cast<long>(n));
                name = "gamma_n = Lambda^n - n Lambda mu_{n-1}";
                break;
            }
            case FamilyKind::generic:
                expected = recomputed[n];
                name = "gamma_n consistent with mu";
                break;
            default:
                // γ₀ = μ₀ = 1; the claim is γ_n = 0 for n ≥ 1.
                if (n == 0) expected = MultiPoly::constant(nv, Rational(1));
                name = n == 0 ? "gamma_0 = 1" : "gamma_n = 0";
                break;
        }
        r.checks.push_back(poly_check(name + " [n=" + std::to_string(n) + "]", family.gamma.at(n) - expected, family.names));
        if (family.kind != FamilyKind::generic)
            r.checks.push_back(poly_check("stored gamma matches mu [n=" + std::to_string(n) + "]",
                                          family.gamma[n] - recomputed[n], family.names));
    }
    return r;
}

IdentityReport check_waterbag_s_constants(std::span<const Rational> heights) {
    validate_heights(heights);
    const ClosureFamily f = make_waterbag(std::vector<Rational>(heights.begin(), heights.end()));
    IdentityReport r;
    r.subject = f.tag();
    const std::vector<MultiPoly> S = s_from_mu<MultiPoly>(f.mu);
    const Rational aN = heights.back();
    for (std::size_t n = 0; n < S.size(); ++n) {
        const int ni = static_cast<int>(n);
        const Rational expected = Rational(1 + (n % 2 == 0 ? 1 : -1)) / (Rational(ni + 1) * rpow(Rational(2), ni + 1) * rpow(aN, ni));
        const Rational got = S[n].constant_term();
        r.checks.push_back(bool_check("S_n constant term [n=" + std::to_string(n) + "]", got == expected,
                                      "got " + to_string(got) + ", expected " + to_string(expected)));
    }
    return r;
}

SignatureClaim expected_signature(const ClosureFamily& family) {
    SignatureClaim c;
    const int N = static_cast<int>(family.nfields);
    switch (family.kind) {
        case FamilyKind::multidelta: {
            const int M = std::get<MultiDeltaParams>(family.params).streams;
            c.full = {{M, M}};
            c.micro = Signature{M - 1, M - 1};
            break;
        }
        case FamilyKind::waterbag: {
            int k = 0;
            for (const auto& a : std::get<WaterbagParams>(family.params).heights) k += sgn(a) > 0;
            c.full = {{N - k, k}};
            break;
        }
        case FamilyKind::burby:
            c.full = {{N / 2, (N + 1) / 2}, {(N + 1) / 2, N / 2}};
            break;
        case FamilyKind::fourfield:
            c.full = {{2, 2}};
            c.micro = Signature{1, 1};
            break;
        case FamilyKind::generic:
            break;
    }
    return c;
}

IdentityReport check_signature(const ClosureFamily& family) {
    IdentityReport r;
    r.subject = family.tag();
    const SignatureClaim claim = expected_signature(family);
    const Signature full = full_signature(family);
    if (!claim.full.empty()) {
        const bool ok = std::find(claim.full.begin(), claim.full.end(), full) != claim.full.end();
        r.checks.push_back(bool_check("full signature " + to_string(full), ok, "unexpected signature " + to_string(full)));
    } else {
        r.checks.push_back({"full signature " + to_string(full), true, {}});
    }
    if (claim.micro) {
        const Signature micro = signature(family.metric);
        r.checks.push_back(bool_check("microscopic signature " + to_string(micro), micro == *claim.micro,
                                      "expected " + to_string(*claim.micro)));
    }
    return r;
}

std::optional<MultiPoly> reference_mu(const ClosureFamily& family, int n) {
    if (n < 0) return std::nullopt;
    if (static_cast<std::size_t>(n) < family.mu.size()) return family.mu[static_cast<std::size_t>(n)];
    const std::size_t nv = family.nvars();
    switch (family.kind) {
        case FamilyKind::multidelta: {
            const int M = std::get<MultiDeltaParams>(family.params).streams;
            if (M < 2) return MultiPoly(nv);  // cold: a single delta at ψ = u
            return multidelta_mu(M, n);
        }
        case FamilyKind::waterbag:
            return waterbag_mu(std::get<WaterbagParams>(family.params).heights, n);
        case FamilyKind::burby:
            return MultiPoly(nv);  // μ_k = 0 beyond the level
        case FamilyKind::fourfield: {
            const FourFieldPolys p = fourfield_family(std::get<FourFieldParams>(family.params).kappa);
            if (static_cast<std::size_t>(n) < p.mu.size()) return p.mu[static_cast<std::size_t>(n)];
            return std::nullopt;
        }
        case FamilyKind::generic:
            return std::nullopt;
    }
    return std::nullopt;
}

IdentityReport check_generator(const ClosureFamily& family) {
    IdentityReport r;
    r.subject = family.tag();
    if (family.nfields < 3) {
        r.checks.push_back({"generator (no normal variables)", true, {}});
        return r;
    }
    const GeneratorSeed seed = generator_seed(family);
    const int n_max = std::max(5, static_cast<int>(2 * family.nfields) - 3);
    const std::vector<MultiPoly> gen = generate_closure_from_mu2(seed.mu2, seed.g, seed.rule, n_max, seed.lambda);
    for (int n = 3; n <= n_max; ++n) {
        const auto ref = reference_mu(family, n);
        if (!ref) continue;
        r.checks.push_back(poly_check("generated mu_" + std::to_string(n), gen[static_cast<std::size_t>(n)] - *ref, family.names));
    }
    return r;
}

IdentityReport check_homogeneity(const ClosureFamily& family) {
    IdentityReport r;
    r.subject = family.tag();
    for (std::size_t n = 1; n < family.mu.size(); ++n) {
        const auto d = homogeneous_degree(family.mu[n]);
        const bool ok = d && (*d == kAnyDegree || *d == static_cast<int>(n) + 1);
        r.checks.push_back(bool_check("mu_" + std::to_string(n) + " homogeneous of degree n+1", ok, "not homogeneous"));
    }
    return r;
}

IdentityReport check_fourfield(const Rational& kappa) {
    IdentityReport r;
    r.subject = "fourfield(kappa=" + to_string(kappa) + ")";
    const FourFieldPolys p = fourfield_family(kappa);
    const std::vector<std::string> names{"G2", "G3"};
    const auto& mu = p.mu;
    const auto& S = p.S;
    const std::size_t G2 = 0, G3 = 1;

    const std::vector<MultiPoly> S_from_mu = s_from_mu<MultiPoly>(mu);
    for (std::size_t n = 2; n <= 5; ++n)
        r.checks.push_back(poly_check("S_" + std::to_string(n) + " from mu", S_from_mu[n] - S[n], names));

    for (int n = 2; n <= 4; ++n) {
        const auto nn = static_cast<std::size_t>(n);
        const MultiPoly cross_mu = diff(mu[nn], G2) * diff(mu[2], G3) + diff(mu[nn], G3) * diff(mu[2], G2);
        r.checks.push_back(poly_check("mu recursion n=" + std::to_string(n),
                                      mu[nn + 1] - cross_mu * make_rational(1, n + 2), names));
        const MultiPoly cross_S = diff(S[nn], G2) * diff(S[2], G3) + diff(S[nn], G3) * diff(S[2], G2);
        const MultiPoly rhs = S[2] * S[nn - 1] * make_rational(3 * n, n + 2) + cross_S * make_rational(1, n + 2);
        r.checks.push_back(poly_check("S recursion n=" + std::to_string(n), S[nn + 1] - rhs, names));
    }

    // Derivatives in (S₂, S₃) via the Jacobian of (Γ₂, Γ₃) -> (S₂, S₃),
    // scaled by its determinant to stay polynomial.
    const MultiPoly det = diff(S[2], G2) * diff(S[3], G3) - diff(S[2], G3) * diff(S[3], G2);
    auto dS2 = [&](const MultiPoly& f) { return diff(f, G2) * diff(S[3], G3) - diff(f, G3) * diff(S[3], G2); };
    auto dS3 = [&](const MultiPoly& f) { return diff(f, G3) * diff(S[2], G2) - diff(f, G2) * diff(S[2], G3); };
    const MultiPoly a = dS2(S[4]), b = dS3(S[4]);
    const MultiPoly c1 = S[5] * det * Rational(6) -
                         (S[2] * S[3] * det * Rational(12) + S[3] * a * Rational(4) + (S[4] * Rational(5) - S[2] * S[2] * Rational(9)) * b);
    const MultiPoly c2 = dS2(S[5]) * det - (S[3] * det * det * Rational(4) + b * (a - S[2] * det * Rational(3)));
    const MultiPoly c3 = dS3(S[5]) * det - (a * det + b * b);
    r.checks.push_back(poly_check("Jacobi constraint 1", c1, names));
    r.checks.push_back(poly_check("Jacobi constraint 2", c2, names));
    r.checks.push_back(poly_check("Jacobi constraint 3", c3, names));

    if (kappa == 0) {
        for (std::size_t n = 3; n < mu.size(); ++n)
            r.checks.push_back(poly_check("kappa=0: mu_" + std::to_string(n) + " = 0", mu[n], names));
        // μ_n^{Burby, m=2}(ν₁, ν₂) = 3ⁿ μ_n(Γ₂ = ν₂/3, Γ₃ = ν₁).
        const ClosureFamily b2 = make_burby(2);
        const std::vector<MultiPoly> images{MultiPoly::variable(2, 1) * make_rational(1, 3), MultiPoly::variable(2, 0)};
        for (std::size_t n = 1; n <= 2; ++n) {
            const MultiPoly mapped = compose(mu[n], images) * rpow(Rational(3), static_cast<int>(n));
            r.checks.push_back(poly_check("kappa=0 equals burby m=2 for mu_" + std::to_string(n), mapped - b2.mu[n], b2.names));
        }
    }
    return r;
}

IdentityReport verify_family(const ClosureFamily& family, const VerifyOptions& options) {
    IdentityReport r;
    r.subject = family.tag();
    auto add = [&](const std::string& group, const IdentityReport& part) {
        for (auto c : part.checks) {
            c.name = group + ": " + c.name;
            r.checks.push_back(std::move(c));
        }
    };

    IdentityReport flat = check_flatness(family, options.mode);
    const std::size_t total = flat.checks.size(), failed = flat.failures();
    IdentityReport summary;
    summary.checks.push_back({std::to_string(total - failed) + "/" + std::to_string(total) + " cells and invariants",
                              failed == 0, {}});
    for (const auto& c : flat.checks)
        if (!c.passed) summary.checks.push_back(c);
    add("flatness", summary);

    add("gamma", check_gamma(family));
    add("signature", check_signature(family));
    add("generator", check_generator(family));

    switch (family.kind) {
        case FamilyKind::waterbag: {
            const auto& h = std::get<WaterbagParams>(family.params).heights;
            add("contours", check_waterbag_contours(h, options.mode));
            add("S constants", check_waterbag_s_constants(h));
            break;
        }
        case FamilyKind::burby: {
            const auto& p = std::get<BurbyParams>(family.params);
            add("homogeneity", check_homogeneity(family));
            add("kinetic origin", check_kinetic_origin(family, options.mode));
            add("recursion", check_burby_recursion(p.level));
            add("derivative identity", check_burby_derivatives(p.level));
            add("support", check_burby_support(p.level));
            add("inversion", check_burby_inversion(p.level, p.branch, options.inversion_samples, options.seed));
            break;
        }
        case FamilyKind::fourfield:
            add("homogeneity", check_homogeneity(family));
            add("kinetic origin", check_kinetic_origin(family, options.mode));
            add("fourfield", check_fourfield(std::get<FourFieldParams>(family.params).kappa));
            break;
        case FamilyKind::multidelta:
            add("homogeneity", check_homogeneity(family));
            if (family.nfields > 2) add("kinetic origin", check_kinetic_origin(family, options.mode));
            break;
        case FamilyKind::generic: {
            IdentityReport h = check_homogeneity(family);
            if (h.all_passed()) add("kinetic origin", check_kinetic_origin(family, options.mode));
            break;
        }
    }
    return r;
}

}  // namespace hydroclose
