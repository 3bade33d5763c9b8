#include "hydroclose/cli/commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace cli = hydroclose::cli;
namespace fs = std::filesystem;

namespace {

constexpr int kUsageError = 2;

struct FamilyFlags {
    std::string family = "cold";
    std::string levels;
    int level = 1;
    int streams = 2;
    std::string heights, kappa = "0", branch = "plus";
    std::string mu2, mu1, metric, rule = "euler", lambda = "0";
};

void add_family_flags(CLI::App* app, FamilyFlags& f, bool with_levels) {
    app->add_option("--family", f.family, "cold | multidelta | waterbag | burby | fourfield | generic");
    if (with_levels)
        app->add_option("--levels", f.levels, "Burby levels or multi-delta stream counts: 1..6, 3 or 1,2,5");
    app->add_option("--level", f.level, "Burby level m");
    app->add_option("--streams", f.streams, "multi-delta stream count M");
    app->add_option("--heights", f.heights, "waterbag heights a_1..a_N, e.g. 1,1,-2");
    app->add_option("--kappa", f.kappa, "four-field parameter (rational)");
    app->add_option("--branch", f.branch, "Burby inversion branch: plus | minus");
    app->add_option("--mu2", f.mu2, "generic mu_2 in nu1, nu2, ...");
    app->add_option("--mu1", f.mu1, "generic mu_1 override (default 1/2 nu.g^-1 nu)");
    app->add_option("--metric", f.metric, "generic metric rows 'a,b;c,d', or one number c for c*I");
    app->add_option("--rule", f.rule, "generic gamma rule: euler | waterbag | zero");
    app->add_option("--lambda", f.lambda, "Lambda for the waterbag gamma rule");
}

cli::ClosureSpec to_spec(const FamilyFlags& f) {
    cli::ClosureSpec s;
    s.family = f.family;
    s.level = f.level;
    s.streams = f.streams;
    if (!f.heights.empty()) s.heights = cli::parse_rational_list(f.heights);
    s.kappa = cli::parse_rational_list(f.kappa).at(0);
    s.branch = cli::parse_branch(f.branch);
    s.mu2 = f.mu2;
    s.mu1 = f.mu1;
    s.metric = f.metric;
    s.rule = cli::parse_rule(f.rule);
    s.lambda = cli::parse_rational_list(f.lambda).at(0);
    return s;
}

void write_report_file(const cli::Report& r, const std::string& out) {
    if (out.empty()) return;
    fs::create_directories(out);
    std::ofstream(fs::path(out) / "report.json") << r.to_json().dump(2) << '\n';
}

int emit(const cli::Report& r, bool json, const std::string& out) {
    write_report_file(r, out);
    if (json)
        std::cout << r.to_json().dump(2) << '\n';
    else
        std::cout << r.to_text();
    return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hamiltonian fluid closures of the 1D Vlasov-Poisson system: identities, closures, simulations"};
    app.require_subcommand(1);
    bool json = false;
    std::string out;

    FamilyFlags vflags;
    std::string vconfig;
    int samples = 100;
    std::uint64_t seed = 0x5eed;
    bool serial = false;
    auto* verify = app.add_subcommand("verify", "Run the exact identity suite for a closure family");
    add_family_flags(verify, vflags, true);
    verify->add_option("--config", vconfig, "read family and verify options from a JSON config");
    verify->add_option("--samples", samples, "random points per level for the inversion round trip");
    verify->add_option("--seed", seed, "seed for the random points");
    verify->add_flag("--serial", serial, "disable OpenMP in the identity cells");

    FamilyFlags cflags;
    std::string action = "show", mu;
    auto* closure = app.add_subcommand("closure", "Print closure polynomials, Casimirs or the equation of state");
    closure->add_option("action", action, "show | casimir | eos")->check(CLI::IsMember({"show", "casimir", "eos"}));
    add_family_flags(closure, cflags, false);
    closure->add_option("--mu", mu, "eos input mu_1..mu_{N-2}, comma separated");

    std::string config;
    auto* simulate = app.add_subcommand("simulate", "Integrate a fluid or multi-stream run from a JSON config");
    simulate->add_option("--config", config, "run config (see docs/config.md)")->required();

    std::string fluid_config, streams_config;
    auto* compare = app.add_subcommand("compare", "Multi-delta fluid against multi-stream kinetic run");
    compare->add_option("--fluid", fluid_config, "fluid run config")->required();
    compare->add_option("--streams", streams_config, "streams run config")->required();

    for (auto* sub : {verify, closure, simulate, compare}) {
        sub->add_flag("--json", json, "print the JSON report");
        sub->add_option("--out", out, "output directory (reports, CSV, snapshots)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (verify->parsed()) {
            cli::VerifyArgs args;
            if (!vconfig.empty()) {
                const cli::RunConfig c = cli::load_run_config(vconfig);
                args.closure = c.closure;
                args.options = c.verify;
            } else {
                args.closure = to_spec(vflags);
                if (!vflags.levels.empty()) args.options.levels = cli::parse_levels(vflags.levels);
                args.options.inversion_samples = samples;
                args.options.seed = seed;
                args.options.serial = serial;
            }
            return emit(cli::cmd_verify(args), json, out);
        }
        if (closure->parsed()) {
            cli::ClosureArgs args;
            args.action = action == "show"      ? cli::ClosureAction::show
                          : action == "casimir" ? cli::ClosureAction::casimir
                                                : cli::ClosureAction::eos;
            args.closure = to_spec(cflags);
            if (args.action == cli::ClosureAction::eos) {
                if (mu.empty()) throw cli::ConfigError("closure eos needs --mu");
                args.mu = cli::parse_double_list(mu);
            }
            const cli::Report r = cli::cmd_closure(args);
            write_report_file(r, out);
            if (json) {
                std::cout << r.to_json().dump(2) << '\n';
            } else {
                for (const auto& line : r.metrics["output"]) std::cout << line.get<std::string>() << '\n';
                if (!r.passed()) std::cerr << r.to_text();
            }
            return r.exit_code();
        }
        if (simulate->parsed()) {
            const cli::RunConfig c = cli::load_run_config(config);
            const std::string dir = !out.empty() ? out : c.output.path;
            if (dir.empty()) throw cli::ConfigError("simulate needs --out or output.path");
            return emit(cli::cmd_simulate(c, dir), json, dir);
        }
        if (compare->parsed()) {
            const cli::RunConfig f = cli::load_run_config(fluid_config);
            const cli::RunConfig s = cli::load_run_config(streams_config);
            std::optional<fs::path> dir;
            if (!out.empty()) dir = out;
            return emit(cli::cmd_compare(f, s, dir), json, out);
        }
    } catch (const cli::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kUsageError;
}
