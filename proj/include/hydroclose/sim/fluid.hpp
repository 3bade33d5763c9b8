#pragma once

#include "hydroclose/closures.hpp"
#include "hydroclose/sim/grid.hpp"
#include "hydroclose/sim/kernels.hpp"
#include "hydroclose/sim/spectral.hpp"
#include "hydroclose/sim/state.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace hydroclose::sim {

enum class Scheme { rk4, split };

struct DiagnosticRecord {
    double t = 0.0;
    double H = 0.0;
    double C_mass = 0.0;
    double C_psi = 0.0;
    std::vector<double> C;  // ∫ρν_k
    double momentum = 0.0;
    double field_energy = 0.0;
};

// Closed fluid system in (ρ, u, ν) for one closure family on one grid.
// Not thread-safe: owns transform plans and scratch arrays.
class FluidModel {
public:
    FluidModel(ClosureFamily family, const Grid& grid, Discretization disc = Discretization::spectral,
               KernelMode mode = KernelMode::openmp);

    const ClosureFamily& closure() const { return family_; }
    const Grid& grid() const { return grid_; }
    const ClosureKernels& kernels() const { return kernels_; }
    KernelMode mode() const { return mode_; }

    // Time derivative of every field. Throws SimulationError if ρ ≤ 0 or the
    // state breaks neutrality.
    void rhs(const FieldState& s, FieldState& out);
    FieldState rhs(const FieldState& s);

    // One step; checks finiteness and positivity afterwards.
    void step(FieldState& s, double dt, Scheme scheme);

    DiagnosticRecord diagnostics(const FieldState& s);
    // Same quadratures with every density replaced by its absolute value;
    // the natural scale for drifts of quantities whose total is near zero.
    DiagnosticRecord magnitudes(const FieldState& s);

    // Electric potential and field of the state's density.
    void field(const FieldState& s, std::vector<double>& phi, std::vector<double>& E);

    // The split scheme works in (ρ, ψ, ν̃ = ρν) and needs μ₁ = ½ν·g⁻¹ν.
    bool split_supported() const { return split_ok_; }

private:
    struct Flat;
    void step_rk4(FieldState& s, double dt);
    void step_split(FieldState& s, double dt);
    void flat_rhs(const Flat& y, int subflow, Flat& out);
    void rk4_subflow(Flat& y, int subflow, double dt);

    ClosureFamily family_;
    Grid grid_;
    KernelMode mode_;
    ClosureKernels kernels_;
    std::unique_ptr<PeriodicOperator> op_;
    FluidTerms terms_;
    std::vector<double> phi_, E_;
    bool split_ok_ = false;
    std::vector<double> T_, Tinv_, d_;  // T g Tᵀ = diag(d), row-major
};

struct RunOptions {
    double dt = 0.0;  // 0 selects the CFL limit of the initial state
    double t_end = 1.0;
    Scheme scheme = Scheme::rk4;
    std::size_t stride = 1;  // steps between recorded diagnostics
};

struct RunResult {
    std::vector<DiagnosticRecord> records;
    std::vector<std::string> warnings;
    std::size_t steps = 0;
    double dt = 0.0;
    bool completed = false;
    std::string error;
};

using FluidObserver = std::function<void(const FieldState&, const DiagnosticRecord&)>;

// Integrates to t_end, recording diagnostics at t = 0, every stride steps and
// at the end. A SimulationError stops the run and is reported in error; the
// state is left at the last completed step.
RunResult run_fluid(FluidModel& model, FieldState& state, const RunOptions& options,
                    const FluidObserver& observer = {});

// max over the series of |X(t) − X(0)| / max(|X(0)|, scale).
double relative_drift(std::span<const double> series, double scale);

struct DriftSummary {
    double H = 0.0, C_mass = 0.0, C_psi = 0.0, momentum = 0.0;
    std::vector<double> C;
    double max_casimir() const;  // over C_mass, C_psi and C
};

// Drifts of every recorded invariant; scale holds magnitudes() at t = 0.
DriftSummary drift_summary(const std::vector<DiagnosticRecord>& records, const DiagnosticRecord& scale);

}  // namespace hydroclose::sim
