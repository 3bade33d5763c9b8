#include "hydroclose/cli/commands.hpp"
#include "hydroclose/sim/analysis.hpp"
#include "hydroclose/sim/output.hpp"
#include "hydroclose/sim/streams.hpp"
#include "hydroclose/sim/wave_speed.hpp"

#include <cmath>
#include <fstream>

namespace hydroclose::cli {

namespace {

namespace fs = std::filesystem;

sim::RunOptions run_options(const RunConfig& c) {
    sim::RunOptions o;
    o.dt = c.integrator.dt;
    o.t_end = c.integrator.t_end;
    o.scheme = c.integrator.scheme;
    o.stride = c.output.stride;
    return o;
}

// Writes every snapshots-th record, plus the last one handed to finish().
class SnapshotSink {
public:
    SnapshotSink(const fs::path& dir, std::size_t every) : dir_(dir), every_(every) {
        if (every_ > 0) fs::create_directories(dir_);
    }
    template <class Write>
    void offer(Write&& write) {
        if (every_ == 0) return;
        if (seen_++ % every_ == 0) {
            emit(write);
            pending_ = false;
        } else {
            pending_ = true;
        }
    }
    template <class Write>
    void finish(Write&& write) {
        if (every_ > 0 && pending_) emit(write);
    }
    std::size_t written() const { return index_; }

private:
    template <class Write>
    void emit(Write& write) {
        std::ofstream out(sim::snapshot_path(dir_, index_++));
        if (!out) throw std::runtime_error("cannot write snapshot in " + dir_.string());
        write(out);
    }
    fs::path dir_;
    std::size_t every_;
    std::size_t seen_ = 0, index_ = 0;
    bool pending_ = false;
};

void add_drift(Report& r, const std::string& name, double drift, double tol) {
    r.metrics["drift"][name] = drift;
    r.add("drift " + name, drift < tol, sci(drift) + " < " + sci(tol));
}

// Run status: error aborts, incomplete runs fail.
void add_run_status(Report& r, bool completed, const std::string& error, double t_reached, double t_target) {
    if (!error.empty()) r.error = "run aborted at t = " + sci(t_reached) + ": " + error;
    r.add("run reached t_end", completed && error.empty(),
          "t = " + sci(t_reached) + " of " + sci(t_target));
}

void simulate_fluid(const RunConfig& c, const fs::path& out_dir, Report& report) {
    const ClosureFamily family = build_family(c.closure);
    sim::FluidModel model(family, c.grid, c.integrator.discretization, c.integrator.kernels);
    if (c.integrator.scheme == sim::Scheme::split && !model.split_supported())
        throw ConfigError("the split scheme needs mu_1 = 1/2 nu.g^-1 nu, which " + family.tag() + " does not satisfy");
    sim::FieldState state = initial_fluid_state(c, family);
    const double t0 = state.t;
    const sim::DiagnosticRecord scale = model.magnitudes(state);
    const auto speeds = sim::speed_summary(model.kernels(), state);
    report.metrics["initial_max_speed"] = speeds.max_speed;
    report.metrics["initial_max_imag_speed"] = speeds.max_imag;

    // Density projection onto the first perturbed density mode, for ω.
    int mode = 1;
    for (const auto& p : c.initial.perturbations)
        if (p.field == sim::PerturbedField::rho) {
            mode = p.mode;
            break;
        }
    std::vector<double> times, amplitude;

    sim::CsvWriter csv(out_dir / "diagnostics.csv", sim::diagnostics_columns(family.nvars()));
    SnapshotSink snaps(out_dir / "snapshots", c.output.snapshots);
    bool any = false;
    auto observer = [&](const sim::FieldState& s, const sim::DiagnosticRecord& d) {
        csv.row(sim::diagnostics_row(d));
        times.push_back(s.t);
        std::vector<double> drho(s.rho);
        for (double& x : drho) x -= s.n0;
        amplitude.push_back(sim::mode_amplitude(drho, c.grid, mode).real());
        snaps.offer([&](std::ostream& os) { sim::write_snapshot(os, c.grid, s, family.names); });
        any = true;
    };
    const sim::RunResult result = sim::run_fluid(model, state, run_options(c), observer);
    if (any) snaps.finish([&](std::ostream& os) { sim::write_snapshot(os, c.grid, state, family.names); });

    report.warnings = result.warnings;
    report.metrics["dt"] = result.dt;
    report.metrics["steps"] = result.steps;
    report.metrics["snapshots"] = snaps.written();
    add_run_status(report, result.completed, result.error, state.t, t0 + c.integrator.t_end);

    const sim::DriftSummary d = sim::drift_summary(result.records, scale);
    const double tol = c.checks.drift_tolerance;
    const double ctol = c.checks.casimir_tolerance.value_or(tol);
    add_drift(report, "H", d.H, tol);
    add_drift(report, "momentum", d.momentum, tol);
    add_drift(report, "C_mass", d.C_mass, ctol);
    add_drift(report, "C_psi", d.C_psi, ctol);
    for (std::size_t k = 0; k < d.C.size(); ++k) add_drift(report, "C_" + std::to_string(k + 1), d.C[k], ctol);

    const auto omega = sim::zero_crossing_frequency(times, amplitude);
    if (omega) report.metrics["frequency"] = *omega;
    if (c.checks.expected_frequency) {
        const double target = *c.checks.expected_frequency;
        const bool ok = omega && std::abs(*omega - target) <= c.checks.frequency_tolerance * std::abs(target);
        report.add("oscillation frequency", ok,
                   omega ? "omega = " + sim::format_double(*omega) + ", expected " + sci(target)
                         : std::string("fewer than three zero crossings of the density mode"));
    }
}

void simulate_streams(const RunConfig& c, const fs::path& out_dir, Report& report) {
    sim::StreamModel model(c.grid, c.integrator.discretization, c.integrator.kernels);
    sim::StreamState state = initial_stream_state(c);
    const double t0 = state.t;

    sim::CsvWriter csv(out_dir / "diagnostics.csv", sim::stream_columns());
    SnapshotSink snaps(out_dir / "snapshots", c.output.snapshots);
    bool any = false;
    auto observer = [&](const sim::StreamState& s, const sim::StreamRecord& r) {
        csv.row(sim::stream_row(r));
        snaps.offer([&](std::ostream& os) { sim::write_snapshot(os, c.grid, s); });
        any = true;
    };
    const sim::StreamRunResult result = sim::run_streams(model, state, run_options(c), observer);
    if (any) snaps.finish([&](std::ostream& os) { sim::write_snapshot(os, c.grid, state); });

    report.warnings = result.warnings;
    report.metrics["dt"] = result.dt;
    report.metrics["steps"] = result.steps;
    report.metrics["snapshots"] = snaps.written();
    report.metrics["wave_breaking"] = result.broke;
    add_run_status(report, result.completed, result.error, result.end_time, t0 + c.integrator.t_end);

    auto series = [&](auto get) {
        std::vector<double> out;
        for (const auto& r : result.records) out.push_back(get(r));
        return out;
    };
    // Scales: H and mass at t = 0, and ∫Σ|a v| at t = 0 for momentum.
    const double mass = result.records.empty() ? 1.0 : result.records.front().mass;
    double abs_mom = 0.0;
    {
        const sim::StreamState s0 = initial_stream_state(c);
        for (std::size_t k = 0; k < s0.streams(); ++k) {
            std::vector<double> am(s0.nx());
            for (std::size_t j = 0; j < s0.nx(); ++j) am[j] = std::abs(s0.a[k][j] * s0.v[k][j]);
            abs_mom += sim::integrate(am, c.grid);
        }
    }
    const double tol = c.checks.drift_tolerance;
    add_drift(report, "H", sim::relative_drift(series([](const sim::StreamRecord& r) { return r.H; }), 0.0), tol);
    add_drift(report, "momentum",
              sim::relative_drift(series([](const sim::StreamRecord& r) { return r.momentum; }), abs_mom), tol);
    add_drift(report, "mass",
              sim::relative_drift(series([](const sim::StreamRecord& r) { return r.mass; }), mass),
              c.checks.casimir_tolerance.value_or(tol));
}

}  // namespace

Report cmd_simulate(const RunConfig& config, const fs::path& out_dir) {
    Stopwatch clock;
    Report report;
    report.command = "simulate";
    report.inputs = config.source;
    fs::create_directories(out_dir);
    if (config.model == ModelKind::fluid)
        simulate_fluid(config, out_dir, report);
    else
        simulate_streams(config, out_dir, report);
    report.wall_seconds = clock.seconds();
    return report;
}

}  // namespace hydroclose::cli
