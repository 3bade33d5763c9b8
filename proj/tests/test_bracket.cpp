#include "support.hpp"

#include "hydroclose/bracket.hpp"
#include "hydroclose/closures.hpp"
#include "hydroclose/identities.hpp"
#include "hydroclose/moments.hpp"

#include <doctest.h>

#include <cmath>

using namespace hydroclose;
using hctest::Rng;

namespace {

RationalMatrix diag(std::initializer_list<long> d) {
    RationalMatrix g(d.size(), d.size(), Rational(0));
    std::size_t i = 0;
    for (long x : d) {
        g(i, i) = x;
        ++i;
    }
    return g;
}

// Counts signs of the diagonal directly, as an independent route for
// diagonal metrics.
Signature count_signs(const RationalMatrix& g) {
    Signature s;
    for (std::size_t i = 0; i < g.rows(); ++i) (g(i, i) > 0 ? s.positive : s.negative)++;
    return s;
}

}  // namespace

TEST_SUITE("bracket") {

TEST_CASE("KM bracket (P0, P1) block") {
    const HydroBracket b = km_bracket(3);
    const std::vector<std::string> P = indexed_names("P", 4, 0);
    CHECK(b.alpha(0, 0).is_zero());
    CHECK(b.alpha(0, 1) == parse_poly("P0", P));
    CHECK(b.alpha(1, 0) == parse_poly("P0", P));
    CHECK(b.alpha(1, 1) == parse_poly("2*P1", P));
    CHECK(b.alpha(2, 2) == parse_poly("4*P3", P));
    for (std::size_t N = 2; N <= 6; ++N) CHECK(check_invariants(km_bracket(N)).all_passed());
}

TEST_CASE("identity Jacobian leaves a bracket unchanged") {
    const HydroBracket b = km_bracket(3);
    const PolyMatrix J = to_poly_matrix(identity_matrix(3), b.nparams);
    CHECK(compare_brackets(transform(b, J, Execution::serial), b, "identity").all_passed());
}

TEST_CASE("flat (rho, u) bracket maps onto the KM block") {
    // (ρ, u) with α = [[0,1],[1,0]] pushed to (P₀, P₁) = (ρ, ρu).
    const std::vector<std::string> names{"rho", "u"};
    const HydroBracket flat = flat_bracket(offdiagonal_block_identity(1));
    PolyMatrix J(2, 2, MultiPoly(2));
    J(0, 0) = parse_poly("1", names);
    J(1, 0) = parse_poly("u", names);
    J(1, 1) = parse_poly("rho", names);
    const HydroBracket pushed = transform(flat, J);
    const std::vector<MultiPoly> images{parse_poly("rho", names), parse_poly("rho*u", names)};
    const HydroBracket km = reparameterize(km_bracket(2), images);
    CHECK(compare_brackets(pushed, km, "flat vs KM", names).all_passed());
    CHECK(check_invariants(pushed, names).all_passed());

    // A wrong Jacobian is caught.
    J(1, 1) = parse_poly("2*rho", names);
    CHECK_FALSE(compare_brackets(transform(flat, J), km, "wrong", names).all_passed());
}

TEST_CASE("singular Jacobian is rejected") {
    const HydroBracket flat = flat_bracket(identity_matrix(2));
    PolyMatrix J(2, 2, MultiPoly(2));
    J(0, 0) = MultiPoly::constant(2, Rational(1));
    J(1, 0) = MultiPoly::constant(2, Rational(1));
    CHECK_THROWS_AS(transform(flat, J), std::domain_error);
}

TEST_CASE("flatness holds for the known families") {
    for (int m = 1; m <= 4; ++m) {
        INFO("burby m=", m);
        CHECK(check_flatness(make_burby(m)).all_passed());
    }
    for (int M = 2; M <= 4; ++M) {
        INFO("multidelta M=", M);
        CHECK(check_flatness(make_multidelta(M)).all_passed());
    }
    CHECK(check_flatness(make_waterbag({Rational(1), Rational(1), Rational(-2)})).all_passed());
    CHECK(check_flatness(make_waterbag({Rational(2), Rational(-1), Rational(3), Rational(-4)})).all_passed());
    CHECK(check_flatness(make_fourfield(make_rational(-2, 3))).all_passed());
}

TEST_CASE("serial and parallel identity cells agree") {
    const ClosureFamily f = make_burby(3);
    const IdentityReport a = check_flatness(f, Execution::serial), b = check_flatness(f, Execution::parallel);
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) {
        CHECK(a.checks[i].name == b.checks[i].name);
        CHECK(a.checks[i].passed == b.checks[i].passed);
        CHECK(a.checks[i].residual == b.checks[i].residual);
    }
}

TEST_CASE("perturbed mu_2 breaks flatness") {
    const auto names = indexed_names("nu", 3);
    const MultiPoly mu2 = burby_mu(3, 2) + parse_poly("nu1^3", names);
    const ClosureFamily bad = make_generic(mu2, antidiagonal_ones(3), GammaRule::euler);
    const IdentityReport r = check_flatness(bad);
    CHECK_FALSE(r.all_passed());
    bool has_residual = false;
    for (const auto& c : r.checks) has_residual |= !c.passed && !c.residual.empty() && c.residual != "0";
    CHECK(has_residual);
}

TEST_CASE("the other beta index placement fails") {
    for (int m = 2; m <= 3; ++m) {
        const ClosureFamily f = make_burby(m);
        const HydroBracket swapped = alpha_beta_in_mu_swapped_index(f.mu, f.gamma, f.nvars());
        CHECK_FALSE(check_flatness_against(f, swapped).all_passed());
        CHECK(check_flatness_against(f, alpha_beta_in_mu(f)).all_passed());
    }
}

TEST_CASE("signatures by congruence") {
    CHECK(signature_of(diag({1, -1, 3})) == Signature{2, 1});
    CHECK(signature_of(offdiagonal_block_identity(2)) == Signature{2, 2});
    CHECK_THROWS_AS(signature_of(diag({1, 0})), std::domain_error);

    for (int M = 1; M <= 4; ++M) CHECK(full_signature(make_multidelta(M)) == Signature{M, M});
    const ClosureFamily f2 = make_multidelta(2);
    CHECK(full_signature(f2) == Signature{2, 2});

    for (int m = 1; m <= 6; ++m) {
        const int N = m + 2;
        const Signature s = full_signature(make_burby(m));
        const bool ok = s == Signature{N / 2, (N + 1) / 2} || s == Signature{(N + 1) / 2, N / 2};
        INFO("m=", m, " got ", to_string(s));
        CHECK(ok);
    }
}

TEST_CASE("waterbag signature follows the height signs") {
    const std::vector<std::vector<Rational>> sets{
        {Rational(1), Rational(-1)},
        {Rational(1), Rational(1), Rational(-2)},
        {Rational(2), Rational(-1), Rational(3), Rational(-4)},
        {Rational(1), Rational(-3), Rational(1), Rational(1)},
        {Rational(1), Rational(2), Rational(-1), Rational(1), Rational(-3)},
        {Rational(-1), Rational(-1), Rational(3), Rational(2), Rational(-1), Rational(-2)},
    };
    for (const auto& a : sets) {
        int negative = 0;
        for (const auto& h : a) negative += h < 0;
        const int N = static_cast<int>(a.size());
        const Signature s = full_signature(make_waterbag(a));
        INFO("N=", N, " got ", to_string(s));
        CHECK(s.positive + s.negative == N);
        // One sign per contour: ∫v_n carries −1/a_n.
        CHECK(s == Signature{negative, N - negative});
        CHECK(check_waterbag_contours(a).all_passed());
    }
}

TEST_CASE("congruence diagonalizes exactly") {
    Rng rng(401);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 5));
        RationalMatrix g(n, n, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) g(i, j) = g(j, i) = rng.rational(5, 3);
        if (determinant(g) == 0) continue;
        const Congruence c = congruence_diagonalize(g);
        const RationalMatrix d = c.transform * g * transpose(c.transform);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) REQUIRE(d(i, j) == (i == j ? c.diagonal[i] : Rational(0)));
        REQUIRE(determinant(c.transform) != 0);
    }
}

TEST_CASE("signature is invariant under congruence") {
    Rng rng(402);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 5));
        RationalMatrix g(n, n, Rational(0));
        for (std::size_t i = 0; i < n; ++i) g(i, i) = rng.nonzero_rational();
        RationalMatrix T(n, n, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) T(i, j) = rng.rational(4, 3);
        if (determinant(T) == 0) continue;
        const RationalMatrix h = T * g * transpose(T);
        REQUIRE(is_symmetric(h));
        REQUIRE(signature_of(h) == count_signs(g));
    }
}

TEST_CASE("Casimirs") {
    const ClosureFamily cold = make_cold();
    const CasimirSet cs = casimirs(cold);
    REQUIRE(cs.densities.size() == 2);
    CHECK(cs.densities[0].kind == CasimirKind::mass);
    CHECK(cs.densities[1].kind == CasimirKind::psi);
    const std::vector<double> none;
    const auto v = casimir_density_values(cold, 1.5, -0.25, none);
    CHECK(v[0] == 1.5);
    CHECK(v[1] == -0.25);

    // Burby m = 3: ρν_n through the closed-form inversion of μ.
    const ClosureFamily b = make_burby(3);
    Rng rng(403);
    for (int trial = 0; trial < 20; ++trial) {
        const double rho = rng.uniform(0.5, 2.0), u = rng.uniform(-1.0, 1.0);
        const std::vector<double> nu{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(0.5, 1.5)};
        std::vector<double> mu;
        for (int n = 1; n <= 3; ++n) mu.push_back(eval(b.mu[static_cast<std::size_t>(n)], std::span<const double>(nu)));
        const auto closed = hctest::closed_form_burby_inverse(3, mu);
        const auto dens = casimir_density_values(b, rho, u, nu);
        REQUIRE(dens.size() == 5);
        CHECK(dens[0] == doctest::Approx(rho));
        CHECK(dens[1] == doctest::Approx(u - rho * mu[0]).epsilon(1e-14));
        for (std::size_t k = 0; k < 3; ++k) CHECK(dens[2 + k] == doctest::Approx(rho * closed[k]).epsilon(1e-12));
    }
    CHECK(casimirs(b).densities.size() == 5);
}

TEST_CASE("kinetic origin") {
    CHECK(check_kinetic_origin(make_burby(2)).all_passed());
    CHECK(check_kinetic_origin(make_burby(4)).all_passed());
    CHECK(check_kinetic_origin(make_multidelta(2)).all_passed());
    CHECK(check_kinetic_origin(make_multidelta(3)).all_passed());
    CHECK(check_kinetic_origin(make_fourfield(Rational(3))).all_passed());
}

TEST_CASE("full metric blocks") {
    const RationalMatrix g = full_metric(make_burby(2));
    REQUIRE(g.rows() == 4);
    CHECK(g(0, 1) == 1);
    CHECK(g(1, 0) == 1);
    CHECK(g(0, 0) == 0);
    CHECK(g(2, 3) == 1);
    CHECK(g(2, 2) == 0);
}

}  // TEST_SUITE
