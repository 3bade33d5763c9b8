#include "hydroclose/bracket.hpp"
#include "hydroclose/cli/commands.hpp"
#include "hydroclose/moments.hpp"
#include "hydroclose/sim/output.hpp"

#include <algorithm>
#include <cmath>

namespace hydroclose::cli {

namespace {

std::string matrix_text(const RationalMatrix& g) {
    std::string out = "[";
    for (std::size_t i = 0; i < g.rows(); ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < g.cols(); ++j) out += (j ? ", " : "") + to_string(g(i, j));
        out += "]";
    }
    return out + "]";
}

std::string joined(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
    return out;
}

std::vector<std::string> header_lines(const ClosureFamily& f) {
    std::vector<std::string> fields{"rho", "u"};
    fields.insert(fields.end(), f.names.begin(), f.names.end());
    return {
        "family: " + f.tag(),
        "fields: N = " + std::to_string(f.nfields) + " (" + joined(fields) + ")",
        "metric: " + matrix_text(f.metric.g),
        "signature: microscopic " + to_string(f.metric.signature) + ", full " + to_string(full_signature(f)),
    };
}

std::vector<std::string> show_lines(const ClosureFamily& f) {
    auto lines = header_lines(f);
    for (std::size_t n = 0; n < f.mu.size(); ++n)
        lines.push_back("mu_" + std::to_string(n) + " = " + to_string(f.mu[n], f.names));
    if (f.mu.size() >= 2) {
        const auto S = s_from_mu<MultiPoly>(f.mu);
        for (std::size_t n = 2; n < S.size(); ++n)
            lines.push_back("S_" + std::to_string(n) + " = " + to_string(S[n], f.names));
    }
    return lines;
}

std::vector<std::string> casimir_lines(const ClosureFamily& f) {
    auto lines = header_lines(f);
    for (const auto& c : casimirs(f).densities) {
        std::string label = c.kind == CasimirKind::mass  ? "C_mass"
                            : c.kind == CasimirKind::psi ? "C_psi"
                                                         : "C_" + std::to_string(c.index);
        lines.push_back(label + " = integral of " + c.expression);
    }
    if (f.kind == FamilyKind::burby) {
        // Explicit inversion by back-substitution from the top moment down.
        const int m = std::get<BurbyParams>(f.params).level;
        const std::string top = "nu" + std::to_string(m);
        lines.push_back(top + " = (" + std::to_string(m + 1) + " * mu_" + std::to_string(m) + ")^(1/" +
                        std::to_string(m + 1) + ")");
        for (int n = m - 1; n >= 1; --n) {
            const std::string rest = to_string(burby_remainder(m, n), f.names);
            lines.push_back("nu" + std::to_string(n) + " = (mu_" + std::to_string(n) + " - (" + rest + ")) / " + top +
                            "^" + std::to_string(n));
        }
        if (std::get<BurbyParams>(f.params).branch == BurbyBranch::minus)
            lines.push_back("minus branch: apply the above to (-1)^n mu_n");
    } else if (f.nvars() > 0) {
        lines.push_back("nu(mu): no closed form; use `closure eos --mu ...` for a numeric inversion");
    }
    return lines;
}

}  // namespace

Report cmd_closure(const ClosureArgs& args) {
    Stopwatch clock;
    Report report;
    const char* action = args.action == ClosureAction::show      ? "show"
                         : args.action == ClosureAction::casimir ? "casimir"
                                                                 : "eos";
    report.command = std::string("closure ") + action;
    report.inputs["closure"] = to_json(args.closure);
    if (args.action == ClosureAction::eos) report.inputs["mu"] = args.mu;

    const ClosureFamily family = build_family(args.closure);
    std::vector<std::string> lines;
    switch (args.action) {
        case ClosureAction::show:
            lines = show_lines(family);
            report.add("closure built", true, family.tag());
            break;
        case ClosureAction::casimir:
            lines = casimir_lines(family);
            report.add("casimirs listed", true, std::to_string(casimirs(family).densities.size()) + " densities");
            break;
        case ClosureAction::eos: {
            const std::size_t K = family.nvars();
            if (K == 0) throw ConfigError("the closure has no normal variables; nothing to invert");
            if (args.mu.size() != K)
                throw ConfigError("--mu needs " + std::to_string(K) + " values (mu_1..mu_" + std::to_string(K) + ")");
            lines = header_lines(family);
            try {
                const EquationOfState eos = equation_of_state(family, args.mu);
                std::vector<std::string> nu_text;
                for (double v : eos.nu) nu_text.push_back(sim::format_double(v));
                lines.push_back("nu = " + joined(nu_text));
                for (std::size_t i = 0; i < eos.closure_moments.size(); ++i)
                    lines.push_back("mu_" + std::to_string(K + 1 + i) + " = " +
                                    sim::format_double(eos.closure_moments[i]));
                double err = 0.0, scale = 1.0;
                for (std::size_t n = 1; n <= K; ++n) {
                    err = std::max(err, std::abs(eval(family.mu[n], std::span<const double>(eos.nu)) - args.mu[n - 1]));
                    scale = std::max(scale, std::abs(args.mu[n - 1]));
                }
                report.metrics["nu"] = eos.nu;
                report.metrics["closure_moments"] = eos.closure_moments;
                report.metrics["round_trip_error"] = err / scale;
                report.add("round trip mu(nu) = mu", err / scale < 1e-10, "relative error " + sci(err / scale));
            } catch (const std::exception& e) {
                report.error = std::string("inversion failed: ") + e.what();
            }
            break;
        }
    }
    report.metrics["output"] = lines;
    report.wall_seconds = clock.seconds();
    return report;
}

}  // namespace hydroclose::cli
