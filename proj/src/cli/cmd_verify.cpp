#include "hydroclose/cli/commands.hpp"
#include "hydroclose/identities.hpp"

namespace hydroclose::cli {

namespace {

constexpr std::size_t kDetailLimit = 240;

std::string clip(const std::string& s) {
    if (s.size() <= kDetailLimit) return s;
    return s.substr(0, kDetailLimit) + "... (" + std::to_string(s.size()) + " chars)";
}

std::vector<ClosureSpec> expand_levels(const VerifyArgs& args) {
    const auto& levels = args.options.levels;
    const std::string& fam = args.closure.family;
    if (levels.empty()) return {args.closure};
    if (fam != "burby" && fam != "multidelta")
        throw ConfigError("--levels applies to burby (level m) and multidelta (stream count M) only");
    std::vector<ClosureSpec> out;
    for (int l : levels) {
        ClosureSpec s = args.closure;
        if (fam == "burby")
            s.level = l;
        else
            s.streams = l;
        out.push_back(s);
    }
    return out;
}

}  // namespace

Report cmd_verify(const VerifyArgs& args) {
    Stopwatch clock;
    Report report;
    report.command = "verify";
    report.inputs["closure"] = to_json(args.closure);
    report.inputs["levels"] = args.options.levels;
    report.inputs["inversion_samples"] = args.options.inversion_samples;
    report.inputs["seed"] = args.options.seed;

    // Build everything first so that bad parameters fail before any work.
    std::vector<ClosureFamily> families;
    for (const auto& spec : expand_levels(args)) families.push_back(build_family(spec));

    VerifyOptions opts;
    opts.mode = args.options.serial ? Execution::serial : Execution::parallel;
    opts.inversion_samples = args.options.inversion_samples;
    opts.seed = args.options.seed;
    json per_family = json::object();
    for (const auto& family : families) {
        const IdentityReport r = verify_family(family, opts);
        for (const auto& c : r.checks) report.add(family.tag() + " " + c.name, c.passed, clip(c.residual));
        per_family[family.tag()] = {{"checks", r.checks.size()}, {"failures", r.failures()}};
    }
    report.metrics["families"] = per_family;
    report.wall_seconds = clock.seconds();
    return report;
}

}  // namespace hydroclose::cli
