#include "hydroclose/cli/commands.hpp"
#include "hydroclose/sim/output.hpp"
#include "hydroclose/sim/streams.hpp"
#include "hydroclose/sim/wave_speed.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>

namespace hydroclose::cli {

namespace {

constexpr std::size_t kMoments = 4;  // P₀..P₃

struct Deviation {
    std::array<double, kMoments> relative{};
    double max_abs = 0.0;
};

// |P_n^fluid − P_n^streams| over the grid, relative to max_x Σ_k a_k|v_k|ⁿ,
// which stays away from zero even where P_n itself vanishes.
Deviation moment_deviation(const ClosureFamily& family, const sim::FieldState& f, const sim::StreamState& s) {
    const auto Pf = sim::fluid_moments(family, f, kMoments);
    const auto Ps = sim::stream_moments(s, kMoments);
    Deviation d;
    for (std::size_t n = 0; n < kMoments; ++n) {
        double diff = 0.0, scale = 0.0;
        for (std::size_t j = 0; j < s.nx(); ++j) {
            diff = std::max(diff, std::abs(Pf[n][j] - Ps[n][j]));
            double abs_moment = 0.0;
            for (std::size_t k = 0; k < s.streams(); ++k)
                abs_moment += s.a[k][j] * std::pow(std::abs(s.v[k][j]), static_cast<double>(n));
            scale = std::max(scale, abs_moment);
        }
        d.relative[n] = scale > 0.0 ? diff / scale : diff;
        d.max_abs = std::max(d.max_abs, diff);
    }
    return d;
}

void fold(Deviation& acc, const Deviation& d) {
    for (std::size_t n = 0; n < kMoments; ++n) acc.relative[n] = std::max(acc.relative[n], d.relative[n]);
    acc.max_abs = std::max(acc.max_abs, d.max_abs);
}

}  // namespace

Report cmd_compare(const RunConfig& fc, const RunConfig& sc, const std::optional<std::filesystem::path>& out_dir) {
    Stopwatch clock;
    Report report;
    report.command = "compare";
    report.inputs = {{"fluid", fc.source}, {"streams", sc.source}};
    auto finish = [&] {
        report.wall_seconds = clock.seconds();
        return report;
    };

    if (fc.model != ModelKind::fluid) throw ConfigError("--fluid config must have model \"fluid\"");
    if (sc.model != ModelKind::streams) throw ConfigError("--streams config must have model \"streams\"");
    if (fc.initial.n0 != sc.initial.n0) {
        report.error = "background densities differ: fluid n0 = " + sim::format_double(fc.initial.n0) +
                       ", streams n0 = " + sim::format_double(sc.initial.n0);
        report.add("matching background density", false, report.error);
        return finish();
    }
    if (fc.grid.L != sc.grid.L || fc.grid.nx != sc.grid.nx) {
        report.error = "grids differ between the fluid and streams configs";
        report.add("matching grid", false, report.error);
        return finish();
    }
    report.add("matching background density", true, "n0 = " + sim::format_double(fc.initial.n0));

    const ClosureFamily family = build_family(fc.closure);
    const std::size_t M = sc.initial.beams.size();
    if (family.kind != FamilyKind::multidelta || std::get<MultiDeltaParams>(family.params).streams != static_cast<int>(M))
        throw ConfigError("the fluid closure must be multidelta (or cold) with streams = " + std::to_string(M));

    sim::FluidModel fluid(family, fc.grid, fc.integrator.discretization, fc.integrator.kernels);
    sim::StreamModel streams(sc.grid, sc.integrator.discretization, sc.integrator.kernels);
    if (fc.integrator.scheme == sim::Scheme::split && !fluid.split_supported())
        throw ConfigError("the split scheme is not available for " + family.tag());
    sim::FieldState f = initial_fluid_state(fc, family);
    sim::StreamState s = initial_stream_state(sc);

    const Deviation initial = moment_deviation(family, f, s);
    const double tol = fc.checks.moment_tolerance;
    const double initial_worst = *std::max_element(initial.relative.begin(), initial.relative.end());
    report.metrics["initial_deviation"] = initial_worst;
    if (!(initial_worst < tol)) {
        report.error = "initial data differ: max relative moment deviation " + sci(initial_worst) + " at t = 0";
        report.add("matching initial moments", false, report.error);
        return finish();
    }

    double dt = fc.integrator.dt;
    if (dt <= 0.0)
        dt = std::min(sim::cfl_limit(sim::speed_summary(fluid.kernels(), f), fc.grid),
                      sim::cfl_limit(sim::speed_summary(s), sc.grid));
    double t_end = fc.integrator.t_end;
    if (sc.integrator.t_end != t_end) {
        t_end = std::min(t_end, sc.integrator.t_end);
        report.warnings.push_back("t_end differs between configs; comparing up to t = " + sci(t_end));
    }
    if (sc.integrator.dt > 0.0 && sc.integrator.dt != dt)
        report.warnings.push_back("streams dt ignored; both models step with dt = " + sci(dt));

    std::unique_ptr<sim::CsvWriter> csv;
    if (out_dir) {
        std::filesystem::create_directories(*out_dir);
        csv = std::make_unique<sim::CsvWriter>(*out_dir / "compare.csv",
                                               std::vector<std::string>{"t", "dev_P0", "dev_P1", "dev_P2", "dev_P3"});
    }
    auto log_row = [&](double t, const Deviation& d) {
        if (!csv) return;
        std::vector<std::string> cells{sim::format_double(t)};
        for (double r : d.relative) cells.push_back(sim::format_double(r));
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + cells[i];
        csv->row(line);
    };

    Deviation worst = initial;
    log_row(0.0, initial);
    const auto nsteps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    double t = 0.0;
    bool broke = false;
    try {
        for (std::size_t n = 1; n <= nsteps; ++n) {
            const double target = std::min(static_cast<double>(n) * dt, t_end);
            const double h = target - t;
            fluid.step(f, h, fc.integrator.scheme);
            streams.step(s, h);
            t = f.t = s.t = target;
            if (streams.diagnostics(s).min_dv < sim::kBreakingThreshold) {
                broke = true;
                report.warnings.push_back("wave breaking at t = " + sci(t) + "; comparison window truncated");
                break;
            }
            const Deviation d = moment_deviation(family, f, s);
            fold(worst, d);
            log_row(t, d);
        }
    } catch (const sim::SimulationError& e) {
        report.error = "run aborted at t = " + sci(t) + ": " + e.what();
    }

    report.metrics["dt"] = dt;
    report.metrics["window_end"] = t;
    report.metrics["wave_breaking"] = broke;
    report.metrics["max_abs_difference"] = worst.max_abs;
    for (std::size_t n = 0; n < kMoments; ++n) {
        const std::string name = "P" + std::to_string(n);
        report.metrics["deviation"][name] = worst.relative[n];
        report.add(name + " relative deviation", worst.relative[n] < tol,
                   sci(worst.relative[n]) + " < " + sci(tol) + " over t in [0, " + sci(t) + "]");
    }
    return finish();
}

}  // namespace hydroclose::cli
