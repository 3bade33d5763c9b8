// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "support.hpp"

#include "hydroclose/bracket.hpp"
#include "hydroclose/cli/commands.hpp"
#include "hydroclose/closures.hpp"
#include "hydroclose/identities.hpp"
#include "hydroclose/moments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace hydroclose;
namespace fs = std::filesystem;

namespace {

using RVec = std::vector<Rational>;

struct Outcome {
    bool passed = true;
    std::string detail;
};

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

fs::path config(const std::string& name) { return fs::path(HYDROCLOSE_CONFIG_DIR) / name; }

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("hydroclose_acceptance_" + name);
    fs::remove_all(p);
    return p;
}

// Drops the x₀ slot of the closed form, which μ_n (n ≥ 1) never uses.
MultiPoly drop_density_slot(const MultiPoly& p, int m) {
    const auto M = static_cast<std::size_t>(m);
    std::vector<MultiPoly> images{MultiPoly(M)};
    for (std::size_t k = 0; k < M; ++k) images.push_back(MultiPoly::variable(M, k));
    return compose(p, images);
}

// Heights with the given signs on a_1..a_{N−1}, a_N = −Σ, admissible.
RVec heights_with_signs(hctest::Rng& rng, const std::vector<int>& signs) {
    for (;;) {
        RVec a;
        Rational sum(0);
        for (int s : signs) {
            Rational h(rng.integer(1, 7), rng.integer(1, 3));
            h.canonicalize();
            a.push_back(s > 0 ? h : Rational(-h));
            sum += a.back();
        }
        a.push_back(-sum);
        try {
            validate_heights(a);
            return a;
        } catch (const std::domain_error&) {
        }
    }
}

Outcome criterion1() {
    Timer t;
    std::size_t cells = 0, failures = 0;
    for (int m = 1; m <= 6; ++m) {
        const IdentityReport r = check_flatness(make_burby(m));
        cells += r.checks.size();
        failures += r.failures();
    }
    const double s = t.seconds();
    return {failures == 0 && s < 30.0,
            std::to_string(failures) + " nonzero residuals in " + std::to_string(cells) + " identity cells, m = 1..6; " +
                fmt(s) + " s (limit 30 s)"};
}

Outcome criterion2() {
    int pairs = 0, mismatches = 0;
    for (int m = 1; m <= 6; ++m)
        for (int n = 1; n <= m; ++n) {
            ++pairs;
            if (drop_density_slot(burby_mu_closed(m, n), m) != burby_mu(m, n)) ++mismatches;
        }
    return {mismatches == 0, std::to_string(mismatches) + " of " + std::to_string(pairs) +
                                 " (m, n) pairs differ, 1 <= n <= m <= 6 (exact)"};
}

Outcome criterion3() {
    int term_mismatch = 0;
    for (int m = 2; m <= 5; ++m) {
        const auto golden = hctest::golden_burby(m);
        const auto names = indexed_names("nu", static_cast<std::size_t>(m));
        if (golden.size() != static_cast<std::size_t>(m)) ++term_mismatch;
        for (int n = 1; n <= m && n <= static_cast<int>(golden.size()); ++n) {
            const MultiPoly& g = golden[static_cast<std::size_t>(n - 1)];
            const MultiPoly got = burby_mu(m, n);
            if (got != g || to_string(got, names) != to_string(g, names)) ++term_mismatch;
        }
    }

    hctest::Rng rng(0xacce);
    double worst = 0.0;
    for (int m = 2; m <= 5; ++m) {
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> nu(static_cast<std::size_t>(m));
            for (double& x : nu) x = rng.uniform(-1.5, 1.5);
            nu.back() = rng.uniform(0.3, 2.0);
            std::vector<double> mu;
            for (int n = 1; n <= m; ++n) mu.push_back(eval(burby_mu(m, n), std::span<const double>(nu)));
            worst = std::max(worst, hctest::max_relative_error(hctest::closed_form_burby_inverse(m, mu), nu));
            worst = std::max(worst, hctest::max_relative_error(burby_invert<double>(mu, m), nu));
        }
    }

    int exact_fail = 0;
    for (int m = 2; m <= 5; ++m)
        for (int trial = 0; trial < 20; ++trial) {
            RVec nu = rng.rational_point(static_cast<std::size_t>(m));
            Rational top(rng.integer(1, 9), rng.integer(1, 4));
            top.canonicalize();
            nu.back() = top;
            RVec mu;
            for (int n = 1; n <= m; ++n) mu.push_back(eval(burby_mu(m, n), nu));
            if (burby_invert<Rational>(mu, m) != nu) ++exact_fail;
        }
    const bool ok = term_mismatch == 0 && worst < 1e-12 && exact_fail == 0;
    return {ok, std::to_string(term_mismatch) + " golden mismatches (m = 2..5); inversion max rel err " + fmt(worst) +
                    " over 100 points/level (limit 1e-12); " + std::to_string(exact_fail) +
                    " exact rational round-trip failures"};
}

Outcome criterion4() {
    const auto golden = hctest::golden_fourfield();
    int mismatch = 0, recursion_fail = 0;
    // Seven κ values pin down every golden polynomial, whose κ degree is at most 5.
    for (int k = -3; k <= 3; ++k) {
        const Rational kappa = make_rational(k, 3);
        const FourFieldPolys p = fourfield_family(kappa);
        for (int n = 1; n <= 5; ++n) {
            if (p.mu[static_cast<std::size_t>(n)] != hctest::at_kappa(golden.at("mu_" + std::to_string(n)), kappa))
                ++mismatch;
            if (n >= 2 && p.S[static_cast<std::size_t>(n)] != hctest::at_kappa(golden.at("S_" + std::to_string(n)), kappa))
                ++mismatch;
        }
        const MultiPoly& mu2 = p.mu[2];
        for (int n = 2; n <= 4; ++n) {
            const MultiPoly& mun = p.mu[static_cast<std::size_t>(n)];
            const MultiPoly next = (diff(mun, 0) * diff(mu2, 1) + diff(mun, 1) * diff(mu2, 0)) * Rational(1, n + 2);
            if (next != p.mu[static_cast<std::size_t>(n + 1)]) ++recursion_fail;
        }
    }
    const FourFieldPolys zero = fourfield_family(Rational(0));
    int nonzero = 0;
    for (std::size_t n = 3; n < zero.mu.size(); ++n) nonzero += !zero.mu[n].is_zero();
    return {mismatch == 0 && recursion_fail == 0 && nonzero == 0,
            std::to_string(mismatch) + " golden mismatches over 7 kappa values; " + std::to_string(recursion_fail) +
                " recursion failures for mu_3..mu_5; kappa = 0 leaves " + std::to_string(nonzero) +
                " nonzero mu_{n>=3}"};
}

Outcome criterion5() {
    hctest::Rng rng(0x5a7e);
    int gamma_fail = 0, const_fail = 0, sets = 0, identities = 0;
    for (int N = 2; N <= 6; ++N) {
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<int> signs;
            for (int k = 0; k + 1 < N; ++k) signs.push_back(rng.integer(0, 1) ? 1 : -1);
            const RVec a = heights_with_signs(rng, signs);
            const ClosureFamily f = make_waterbag(a);
            const Rational L = Rational(-1) / (2 * a.back());
            ++sets;
            for (int n = 1; n <= 2 * N - 3; ++n) {
                const auto un = static_cast<std::size_t>(n);
                const MultiPoly expect =
                    MultiPoly::constant(f.nvars(), rpow(L, n)) - f.mu[un - 1] * Rational(Rational(n) * L);
                ++identities;
                if (gamma_n(f.mu[un], static_cast<unsigned>(n)) != expect) ++gamma_fail;
            }
            const auto S = s_from_mu<MultiPoly>(f.mu);
            for (std::size_t n = 0; n < S.size(); ++n) {
                const int in = static_cast<int>(n);
                const Rational expect = Rational(1 + (n % 2 == 0 ? 1 : -1)) /
                                        (Rational(in + 1) * rpow(Rational(2), in + 1) * rpow(a.back(), in));
                ++identities;
                if (S[n].constant_term() != expect) ++const_fail;
            }
        }
    }
    return {gamma_fail == 0 && const_fail == 0,
            std::to_string(gamma_fail + const_fail) + " of " + std::to_string(identities) + " exact identities fail (" +
                std::to_string(sets) + " height sets, N = 2..6)"};
}

Outcome criterion6() {
    int fail = 0, total = 0;
    std::ostringstream bad;
    for (int M = 1; M <= 4; ++M) {
        ++total;
        if (full_signature(make_multidelta(M)) != Signature{M, M}) {
            ++fail;
            bad << " multidelta M=" << M;
        }
    }
    hctest::Rng rng(0x5197);
    for (int N = 2; N <= 6; ++N) {
        for (int pattern = 0; pattern < (1 << (N - 1)); ++pattern) {
            std::vector<int> signs;
            for (int k = 0; k + 1 < N; ++k) signs.push_back((pattern >> k) & 1 ? 1 : -1);
            const RVec a = heights_with_signs(rng, signs);
            int positive = 0;
            for (const auto& h : a) positive += h > 0;
            ++total;
            if (full_signature(make_waterbag(a)) != Signature{N - positive, positive}) {
                ++fail;
                bad << " waterbag N=" << N << " pattern " << pattern;
            }
        }
    }
    for (int m = 1; m <= 6; ++m) {
        const int N = m + 2;
        const Signature s = full_signature(make_burby(m));
        ++total;
        if (s != Signature{N / 2, (N + 1) / 2} && s != Signature{(N + 1) / 2, N / 2}) {
            ++fail;
            bad << " burby N=" << N << " got " << to_string(s);
        }
    }
    return {fail == 0, std::to_string(fail) + " of " + std::to_string(total) +
                           " signatures differ (multi-delta M <= 4, waterbag all sign patterns N <= 6, Burby N <= 8)" +
                           bad.str()};
}

Outcome criterion7() {
    struct Seeded {
        ClosureFamily family;
        GammaRule rule;
        Rational lambda;
    };
    std::vector<Seeded> cases;
    for (int M = 2; M <= 4; ++M) cases.push_back({make_multidelta(M), GammaRule::zero, Rational(0)});
    for (int m = 2; m <= 6; ++m) cases.push_back({make_burby(m), GammaRule::zero, Rational(0)});
    for (int k = -2; k <= 2; ++k) cases.push_back({make_fourfield(Rational(k)), GammaRule::zero, Rational(0)});
    for (const RVec& a : {RVec{Rational(1), Rational(1), Rational(-2)},
                          RVec{Rational(2), Rational(-1), Rational(3), Rational(-4)},
                          RVec{Rational(1), Rational(-3), Rational(1), Rational(1)}})
        cases.push_back({make_waterbag(a), GammaRule::waterbag, Rational(-1) / (2 * a.back())});
    int fail = 0;
    std::ostringstream bad;
    for (const auto& c : cases) {
        const auto gen = generate_closure_from_mu2(c.family.mu[2], c.family.metric.g, c.rule, 5, c.lambda);
        for (std::size_t n = 3; n <= 5; ++n) {
            const MultiPoly expect = n < c.family.mu.size() ? c.family.mu[n] : *reference_mu(c.family, static_cast<int>(n));
            if (gen[n] != expect) {
                ++fail;
                bad << ' ' << c.family.tag() << " n=" << n;
            }
        }
    }
    return {fail == 0, std::to_string(fail) + " mismatches of mu_3..mu_5 over " + std::to_string(cases.size()) +
                           " seeded families (exact)" + bad.str()};
}

Outcome criterion8() {
    Timer t;
    const auto f = cli::load_run_config(config("twostream_fluid.json"));
    const auto s = cli::load_run_config(config("twostream_streams.json"));
    const bool setup_ok = f.grid.nx == 64 && f.integrator.t_end == 1.0 && s.initial.beams.size() == 2;
    const cli::Report r = cli::cmd_compare(f, s);
    const double secs = t.seconds();
    double worst = 0.0;
    for (const char* P : {"P0", "P1", "P2", "P3"})
        if (r.metrics.contains("deviation")) worst = std::max(worst, r.metrics["deviation"][P].get<double>());
    const bool full_window = r.metrics.value("window_end", 0.0) == 1.0 && !r.metrics.value("wave_breaking", true);
    return {setup_ok && r.passed() && full_window && worst < 1e-6 && secs < 10.0,
            "max relative deviation of P0..P3 " + fmt(worst) + " (limit 1e-6) over t in [0, " +
                fmt(r.metrics.value("window_end", 0.0)) + "], M = 2, nx = 64; " + fmt(secs) + " s (limit 10 s)" +
                (r.error.empty() ? "" : "; error: " + r.error)};
}

struct SimOutcome {
    Outcome conservation;
    cli::Report langmuir;
};

SimOutcome criterion9() {
    Timer t;
    const auto lc = cli::load_run_config(config("langmuir.json"));
    const bool setup = lc.grid.nx == 64 && lc.integrator.dt == 0.01 && lc.integrator.t_end == 10.0 &&
                       lc.integrator.scheme == sim::Scheme::rk4;
    cli::Report lr = cli::cmd_simulate(lc, scratch("langmuir"));
    const auto& ld = lr.metrics["drift"];
    const double lH = ld.value("H", 1.0), lmass = ld.value("C_mass", 1.0), lmom = ld.value("momentum", 1.0);
    const bool lang_ok = setup && lr.error.empty() && lH < 1e-8 && lmass < 1e-8 && lmom < 1e-8;

    const auto bc = cli::load_run_config(config("burby4.json"));
    const cli::Report br = cli::cmd_simulate(bc, scratch("burby4"));
    const auto& bd = br.metrics["drift"];
    double bcas = bd.value("C_psi", 1.0);
    for (const char* k : {"C_1", "C_2"}) bcas = std::max(bcas, bd.value(k, 1.0));
    const bool burby_ok = bc.closure.family == "burby" && bc.closure.level == 2 && br.error.empty() && bcas < 1e-6;

    const auto sc = cli::load_run_config(config("burby4_split.json"));
    const cli::Report sr = cli::cmd_simulate(sc, scratch("burby4_split"));
    const auto& sd = sr.metrics["drift"];
    const double scas = std::max(sd.value("C_1", 1.0), sd.value("C_2", 1.0));
    const bool split_ok = sc.integrator.scheme == sim::Scheme::split && sr.error.empty() && scas < 1e-10;

    const double secs = t.seconds();
    Outcome o;
    o.passed = lang_ok && burby_ok && split_ok && secs < 30.0;
    o.detail = "Langmuir rk4 drifts H " + fmt(lH) + ", mass " + fmt(lmass) + ", momentum " + fmt(lmom) +
               " (limit 1e-8); Burby N=4 max drift of psi and rho*nu_k " + fmt(bcas) +
               " (limit 1e-6); split rho*nu_k " + fmt(scas) + " (limit 1e-10); " + fmt(secs) + " s (limit 30 s)";
    return {o, lr};
}

Outcome criterion10(const cli::Report& langmuir) {
    if (!langmuir.metrics.contains("frequency")) return {false, "no frequency measured"};
    const double w = langmuir.metrics["frequency"].get<double>();
    return {std::abs(w - 1.0) <= 0.01, "omega = " + fmt(w) + ", |omega - 1| = " + fmt(std::abs(w - 1.0)) +
                                           " (limit 0.01), cold mode k = 1, n0 = 1"};
}

}  // namespace

int main() {
    int failed = 0;
    auto report = [&](int id, const std::string& title, const std::function<Outcome()>& run) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %2d %s: %s\n", o.passed ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str());
        std::fflush(stdout);
        failed += !o.passed;
    };

    report(1, "flatness identities, Burby m = 1..6", criterion1);
    report(2, "Burby recursion equals closed form", criterion2);
    report(3, "Burby golden lists and inversion", criterion3);
    report(4, "four-field reproduction", criterion4);
    report(5, "waterbag gamma and S_n constants", criterion5);
    report(6, "bracket signatures", criterion6);
    report(7, "mu_2 generation", criterion7);
    report(8, "fluid vs multi-stream oracle", criterion8);

    cli::Report langmuir;
    report(9, "conservation", [&] {
        SimOutcome s = criterion9();
        langmuir = s.langmuir;
        return s.conservation;
    });
    report(10, "cold plasma frequency", [&] { return criterion10(langmuir); });

    std::printf("%d of 10 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
