#pragma once

#include "hydroclose/closures.hpp"
#include "hydroclose/sim/fluid.hpp"
#include "hydroclose/sim/grid.hpp"
#include "hydroclose/sim/spectral.hpp"
#include "hydroclose/sim/state.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace hydroclose::sim {

struct StreamRecord {
    double t = 0.0;
    double H = 0.0;  // ½Σ∫a v² + ½∫E²
    double mass = 0.0;
    double momentum = 0.0;
    double field_energy = 0.0;
    double min_dv = 0.0;  // min over streams and points of ∂ₓv_k
};

// Cold multi-stream model: ∂ₜa_k = −∂ₓ(a_k v_k), ∂ₜv_k = −∂ₓ(v_k²/2 + φ).
class StreamModel {
public:
    StreamModel(const Grid& grid, Discretization disc = Discretization::spectral,
                KernelMode mode = KernelMode::openmp);

    const Grid& grid() const { return grid_; }

    void rhs(const StreamState& s, StreamState& out);
    void step(StreamState& s, double dt);  // classical RK4
    StreamRecord diagnostics(const StreamState& s);

    // Total density Σa_k; the Poisson source.
    std::vector<double> density(const StreamState& s) const;

private:
    Grid grid_;
    KernelMode mode_;
    std::unique_ptr<PeriodicOperator> op_;
    std::vector<double> phi_, E_, scratch_;
    std::vector<std::vector<double>> flux_, bernoulli_;
};

// Stream crossing is imminent once min ∂ₓv_k drops below this.
inline constexpr double kBreakingThreshold = -1e3;

struct StreamRunResult {
    std::vector<StreamRecord> records;
    std::vector<std::string> warnings;
    std::size_t steps = 0;
    double dt = 0.0;
    bool completed = false;
    bool broke = false;  // stopped early on wave breaking
    double end_time = 0.0;
    std::string error;
};

using StreamObserver = std::function<void(const StreamState&, const StreamRecord&)>;

StreamRunResult run_streams(StreamModel& model, StreamState& state, const RunOptions& options,
                            const StreamObserver& observer = {});

// Moments P_n(x) = Σ_k a_k v_kⁿ, n = 0..count−1.
std::vector<std::vector<double>> stream_moments(const StreamState& s, std::size_t count);

// P_n(x) from the fluid fields through ψ = u − ρμ₁ and the closure μ_n(ν).
std::vector<std::vector<double>> fluid_moments(const ClosureFamily& family, const FieldState& s, std::size_t count);

// Multi-delta fluid state (M = streams) carrying the same moments as s.
FieldState fluid_from_streams(const StreamState& s);

}  // namespace hydroclose::sim
