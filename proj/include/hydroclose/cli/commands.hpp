#pragma once

#include "hydroclose/cli/config.hpp"
#include "hydroclose/cli/report.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hydroclose::cli {

struct VerifyArgs {
    ClosureSpec closure;
    VerifySpec options;  // levels: Burby levels or multi-delta stream counts
};

Report cmd_verify(const VerifyArgs& args);

enum class ClosureAction { show, casimir, eos };

struct ClosureArgs {
    ClosureAction action = ClosureAction::show;
    ClosureSpec closure;
    std::vector<double> mu;  // eos input μ₁..μ_{N−2}
};

// Text lines land in metrics["output"]; the report carries the checks.
Report cmd_closure(const ClosureArgs& args);

// Writes diagnostics.csv and snapshots/ under out_dir.
Report cmd_simulate(const RunConfig& config, const std::filesystem::path& out_dir);

// Runs a multi-delta fluid and a multi-stream kinetic model in lockstep and
// reports the largest relative deviation of P₀..P₃. out_dir, if given,
// receives compare.csv.
Report cmd_compare(const RunConfig& fluid, const RunConfig& streams,
                   const std::optional<std::filesystem::path>& out_dir = std::nullopt);

}  // namespace hydroclose::cli
