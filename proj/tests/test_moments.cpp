#include "support.hpp"

#include "hydroclose/bracket.hpp"
#include "hydroclose/closures.hpp"
#include "hydroclose/moments.hpp"

#include <doctest.h>

#include <cmath>

using namespace hydroclose;
using hctest::Rng;

namespace {

using RVec = std::vector<Rational>;

// P_n = Σ a_k v_kⁿ for a discrete distribution.
RVec discrete_moments(const RVec& a, const RVec& v, std::size_t count) {
    RVec P(count, Rational(0));
    for (std::size_t n = 0; n < count; ++n)
        for (std::size_t k = 0; k < a.size(); ++k) P[n] += a[k] * rpow(v[k], static_cast<int>(n));
    return P;
}

// ρ^{-(n+1)} Σ a_k (v_k − c)ⁿ, computed straight from the distribution.
Rational centered_direct(const RVec& a, const RVec& v, const Rational& c, int n) {
    Rational rho(0), sum(0);
    for (std::size_t k = 0; k < a.size(); ++k) {
        rho += a[k];
        sum += a[k] * rpow(Rational(v[k] - c), n);
    }
    return sum / rpow(rho, n + 1);
}

struct Distribution {
    RVec a, v;
};

Distribution random_distribution(Rng& rng) {
    Distribution d;
    const int K = rng.integer(1, 4);
    for (int k = 0; k < K; ++k) {
        Rational w(rng.integer(1, 9), rng.integer(1, 4));
        w.canonicalize();
        d.a.push_back(w);
        d.v.push_back(rng.rational());
    }
    return d;
}

}  // namespace

TEST_SUITE("moments") {

TEST_CASE("s_from_p examples") {
    const RVec P{Rational(2), Rational(2), Rational(3)};
    const auto s = s_from_p<Rational>(P);
    CHECK(s.rho == 2);
    CHECK(s.center == 1);
    REQUIRE(s.values.size() == 1);
    CHECK(s.values[0] == make_rational(1, 8));
    CHECK(p_from_s(s) == P);

    const RVec P0{Rational(3), Rational(0), Rational(5), Rational(-2)};
    const auto s0 = s_from_p<Rational>(P0);
    CHECK(s0.center == 0);
    CHECK(s0.values[0] == make_rational(5, 27));
    CHECK(s0.values[1] == make_rational(-2, 81));
}

TEST_CASE("cold S gives P_n = rho u^n") {
    CenteredMoments<Rational> s;
    s.rho = make_rational(3, 2);
    s.center = make_rational(-2, 3);
    s.values.assign(4, Rational(0));
    const RVec P = p_from_s(s);
    for (std::size_t n = 0; n < P.size(); ++n) CHECK(P[n] == s.rho * rpow(s.center, static_cast<int>(n)));
}

TEST_CASE("mu_from_p examples") {
    const RVec P{Rational(2), Rational(2), Rational(3), Rational(7)};
    const auto s = s_from_p<Rational>(P);
    // ψ = u: μ_n = S_n (μ₁ = 0).
    const auto m = mu_from_p<Rational>(P, s.center);
    CHECK(m.values[0] == 0);
    CHECK(m.values[1] == s.values[0]);
    CHECK(m.values[2] == s.values[1]);
    // ψ = 0: μ_n = P_n/ρ^{n+1}.
    const auto m0 = mu_from_p<Rational>(P, Rational(0));
    for (std::size_t n = 1; n < P.size(); ++n) CHECK(m0.values[n - 1] == P[n] / rpow(P[0], static_cast<int>(n + 1)));
}

TEST_CASE("p_from_mu examples") {
    CenteredMoments<Rational> m;
    m.kind = CenterKind::psi;
    m.rho = make_rational(5, 2);
    m.center = make_rational(1, 3);
    m.values.assign(3, Rational(0));
    const RVec P = p_from_mu(m);
    for (std::size_t n = 0; n < P.size(); ++n) CHECK(P[n] == m.rho * rpow(m.center, static_cast<int>(n)));

    // Burby m = 2 at ν = (1, 1): μ₁ = 1, μ₂ = 1/3; ρ = 1, ψ = 0.
    const ClosureFamily b = make_burby(2);
    const RVec nu{Rational(1), Rational(1)};
    CenteredMoments<Rational> mb;
    mb.kind = CenterKind::psi;
    mb.rho = 1;
    mb.center = 0;
    for (std::size_t n = 1; n < b.mu.size(); ++n) mb.values.push_back(eval(b.mu[n], nu));
    CHECK(mb.values[0] == 1);
    CHECK(mb.values[1] == make_rational(1, 3));
    CHECK(p_from_mu(mb)[2] == make_rational(1, 3));
}

TEST_CASE("centered moments agree with a discrete distribution") {
    Rng rng(201);
    for (int trial = 0; trial < 200; ++trial) {
        const Distribution d = random_distribution(rng);
        const RVec P = discrete_moments(d.a, d.v, 6);
        const auto s = s_from_p<Rational>(P);
        for (int n = 2; n < 6; ++n) REQUIRE(s.values[static_cast<std::size_t>(n - 2)] == centered_direct(d.a, d.v, s.center, n));
        const Rational psi = rng.rational();
        const auto m = mu_from_p<Rational>(P, psi);
        for (int n = 1; n < 6; ++n) REQUIRE(m.values[static_cast<std::size_t>(n - 1)] == centered_direct(d.a, d.v, psi, n));
    }
}

TEST_CASE("round trips are exact") {
    Rng rng(202);
    for (int trial = 0; trial < 300; ++trial) {
        RVec P{Rational(rng.integer(1, 9), rng.integer(1, 5))};
        P[0].canonicalize();
        for (int n = 1; n < 7; ++n) P.push_back(rng.rational());
        REQUIRE(p_from_s(s_from_p<Rational>(P)) == P);
        REQUIRE(p_from_mu(mu_from_p<Rational>(P, rng.rational())) == P);
    }
}

TEST_CASE("S through mu equals S from P") {
    Rng rng(203);
    for (int trial = 0; trial < 200; ++trial) {
        RVec P{Rational(rng.integer(1, 9), rng.integer(1, 5))};
        P[0].canonicalize();
        for (int n = 1; n < 7; ++n) P.push_back(rng.rational());
        const auto s = s_from_p<Rational>(P);
        const auto m = mu_from_p<Rational>(P, rng.rational());
        RVec mu{Rational(1)};
        mu.insert(mu.end(), m.values.begin(), m.values.end());
        const RVec S = s_from_mu<Rational>(mu);
        REQUIRE(S[0] == 1);
        REQUIRE(S[1] == 0);
        for (std::size_t n = 2; n < S.size(); ++n) REQUIRE(S[n] == s.values[n - 2]);
    }
}

TEST_CASE("double and rational paths agree") {
    const RVec P{make_rational(3, 2), make_rational(1, 3), make_rational(7, 5), make_rational(-2, 9)};
    std::vector<double> Pd;
    for (const auto& p : P) Pd.push_back(p.get_d());
    const auto s = s_from_p<Rational>(P);
    const auto sd = s_from_p<double>(Pd);
    for (std::size_t n = 0; n < s.values.size(); ++n) CHECK(sd.values[n] == doctest::Approx(s.values[n].get_d()).epsilon(1e-14));
}

TEST_CASE("nonpositive density is an error") {
    const RVec P{Rational(0), Rational(1), Rational(1)};
    CHECK_THROWS_AS(s_from_p<Rational>(P), std::domain_error);
    const std::vector<double> Pd{-1.0, 0.0, 1.0};
    CHECK_THROWS_AS(mu_from_p<double>(Pd, 0.0), std::domain_error);
    CHECK_THROWS_AS(s_from_p<Rational>(RVec{Rational(1)}), std::invalid_argument);
}

TEST_CASE("gamma values") {
    const auto names = indexed_names("nu", 1);
    CHECK(gamma_n(parse_poly("nu1^2", names), 1).is_zero());

    // γ₀ = μ₀ = 1 for every family; the closure-dependent part starts at n = 1.
    auto higher_vanish = [](const ClosureFamily& f) {
        REQUIRE(f.gamma.at(0) == MultiPoly::constant(f.nvars(), Rational(1)));
        for (std::size_t n = 1; n < f.gamma.size(); ++n) REQUIRE(f.gamma[n].is_zero());
    };
    for (int M = 1; M <= 4; ++M) higher_vanish(make_multidelta(M));
    for (int m = 1; m <= 6; ++m) higher_vanish(make_burby(m));
    for (int k = -2; k <= 2; ++k) higher_vanish(make_fourfield(Rational(k)));

    const std::vector<Rational> a{Rational(1), Rational(1), Rational(-2)};
    const ClosureFamily w = make_waterbag(a);
    const Rational L = waterbag_lambda(a);
    CHECK(L == make_rational(1, 4));
    for (std::size_t n = 1; n < w.mu.size(); ++n) {
        const MultiPoly expect = MultiPoly::constant(w.nvars(), rpow(L, static_cast<int>(n))) -
                                 w.mu[n - 1] * Rational(Rational(static_cast<long>(n)) * L);
        REQUIRE(gamma_n(w.mu[n], static_cast<unsigned>(n)) == expect);
    }
}

TEST_CASE("alpha for multi-delta is (n+m) mu_{n+m-1}") {
    for (int M = 2; M <= 4; ++M) {
        const ClosureFamily f = make_multidelta(M);
        const HydroBracket b = alpha_beta_in_mu(f);
        for (std::size_t n = 1; n <= b.nfields; ++n)
            for (std::size_t m = 1; m <= b.nfields; ++m)
                REQUIRE(b.alpha(n - 1, m - 1) == f.mu[n + m - 1] * Rational(static_cast<long>(n + m)));
    }
}

TEST_CASE("alpha for waterbag carries the Lambda terms") {
    const std::vector<Rational> a{Rational(2), Rational(-1), Rational(3), Rational(-4)};
    const ClosureFamily f = make_waterbag(a);
    const Rational L = waterbag_lambda(a);
    const HydroBracket b = alpha_beta_in_mu(f);
    const std::size_t nv = f.nvars();
    for (std::size_t n = 1; n <= b.nfields; ++n)
        for (std::size_t m = 1; m <= b.nfields; ++m) {
            const long ln = static_cast<long>(n), lm = static_cast<long>(m);
            MultiPoly expect = f.mu[n + m - 1] * Rational(ln + lm);
            expect += f.mu[n - 1] * f.mu[m - 1] * Rational(2 * ln * lm * L);
            expect -= f.mu[m - 1] * Rational(lm * rpow(L, static_cast<int>(n)));
            expect -= f.mu[n - 1] * Rational(ln * rpow(L, static_cast<int>(m)));
            REQUIRE(b.alpha(n - 1, m - 1) == expect);
        }
    CHECK(nv == 2);
}

TEST_CASE("alpha for the three-field Burby closure") {
    const ClosureFamily f = make_burby(1);
    const HydroBracket b = alpha_beta_in_mu(f);
    REQUIRE(b.nfields == 1);
    CHECK(b.alpha(0, 0) == parse_poly("nu1^2", indexed_names("nu", 1)));
}

TEST_CASE("bracket invariants for every family") {
    std::vector<ClosureFamily> families{make_multidelta(2), make_multidelta(3), make_burby(3), make_burby(5),
                                        make_fourfield(make_rational(2, 3)),
                                        make_waterbag({Rational(1), Rational(1), Rational(-2)}),
                                        make_waterbag({Rational(1), Rational(-3), Rational(1), Rational(1)})};
    for (const auto& f : families) {
        const IdentityReport r = check_invariants(alpha_beta_in_mu(f));
        INFO(f.tag());
        CHECK(r.all_passed());
    }
}

TEST_CASE("homogeneous families satisfy the scaling identity") {
    // For μ_n(ν/ν₀) the identity ν₀∂₀ = −Σν_k∂_k reduces to Euler's relation
    // on the homogeneous numerator, checked exactly here.
    for (const auto& f : {make_multidelta(3), make_burby(4), make_fourfield(make_rational(-1, 2))}) {
        for (std::size_t n = 1; n < f.mu.size(); ++n) {
            if (f.mu[n].is_zero()) continue;
            REQUIRE(euler_operator(f.mu[n]) == f.mu[n] * Rational(static_cast<long>(n + 1)));
        }
    }
}

TEST_CASE("scaling identity by finite differences") {
    // F(ν₀, ν) = μ_n(ν/ν₀); ν₀∂F/∂ν₀ + Σν_k∂F/∂ν_k = 0 for every family.
    Rng rng(204);
    std::vector<ClosureFamily> families{make_multidelta(2), make_burby(3),
                                        make_waterbag({Rational(1), Rational(1), Rational(-2)}),
                                        make_fourfield(Rational(1))};
    for (const auto& f : families) {
        const std::size_t nv = f.nvars();
        for (std::size_t n = 1; n < f.mu.size(); ++n) {
            const CompiledPoly p(f.mu[n]);
            auto F = [&](double nu0, std::vector<double> x) {
                for (double& v : x) v /= nu0;
                return p(x.data());
            };
            for (int trial = 0; trial < 5; ++trial) {
                const double nu0 = rng.uniform(0.5, 1.5);
                std::vector<double> x(nv);
                for (double& v : x) v = rng.uniform(-1.0, 1.0);
                const double h = 1e-5;
                double lhs = nu0 * (F(nu0 + h, x) - F(nu0 - h, x)) / (2 * h);
                double scale = std::abs(lhs);
                for (std::size_t k = 0; k < nv; ++k) {
                    auto xp = x, xm = x;
                    xp[k] += h;
                    xm[k] -= h;
                    const double term = x[k] * (F(nu0, xp) - F(nu0, xm)) / (2 * h);
                    lhs += term;
                    scale += std::abs(term);
                }
                INFO(f.tag(), " n=", n);
                REQUIRE(std::abs(lhs) <= 1e-7 * (1.0 + scale));
            }
        }
    }
}

}  // TEST_SUITE
