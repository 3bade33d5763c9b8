#pragma once

#include "hydroclose/sim/grid.hpp"
#include "hydroclose/sim/state.hpp"

#include <span>
#include <string>
#include <vector>

namespace hydroclose::sim {

enum class PerturbedField { rho, u, nu };

// Adds amplitude·cos(2π·mode·x/L + phase) to one field.
struct Perturbation {
    PerturbedField field = PerturbedField::rho;
    std::size_t index = 0;  // ν component when field == nu
    double amplitude = 0.0;
    int mode = 1;
    double phase = 0.0;
};

FieldState homogeneous_state(const Grid& grid, double n0, double u0, std::span<const double> nu0);

// Density perturbations need mode ≥ 1 so that neutrality is kept.
void perturb(FieldState& s, const Grid& grid, const Perturbation& p);

// One cold beam: a = n₀·weight·(1 + density_amplitude·cos θ),
// v = velocity + velocity_amplitude·sin θ, θ = 2π·mode·x/L + phase.
struct BeamSpec {
    double weight = 1.0;
    double velocity = 0.0;
    double density_amplitude = 0.0;
    double velocity_amplitude = 0.0;
    int mode = 1;
    double phase = 0.0;
};

// Weights must be positive and sum to one.
StreamState multi_stream_state(const Grid& grid, double n0, std::span<const BeamSpec> beams);

}  // namespace hydroclose::sim
