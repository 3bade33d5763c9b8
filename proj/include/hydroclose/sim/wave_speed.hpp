#pragma once

#include "hydroclose/sim/grid.hpp"
#include "hydroclose/sim/kernels.hpp"
#include "hydroclose/sim/state.hpp"

#include <complex>
#include <span>
#include <vector>

namespace hydroclose::sim {

// Eigenvalues of the quasilinear matrix of the fluid system at one point,
// in the order (ρ, u, ν):
//   [ u        ρ    0              ]
//   [ 3ρW      u    ρ²∇Wᵀ          ]
//   [ g∇W      0    uI + ½ρ g ∇²W  ]
std::vector<std::complex<double>> characteristic_speeds(const ClosureKernels& ck, double rho, double u,
                                                        std::span<const double> nu);

struct SpeedSummary {
    double max_speed = 0.0;      // max |λ| over the grid
    double max_imag = 0.0;       // largest |Im λ|, nonzero where hyperbolicity fails
    double max_density = 0.0;
};

SpeedSummary speed_summary(const ClosureKernels& ck, const FieldState& s);
SpeedSummary speed_summary(const StreamState& s);

// min(0.4 Δx / max speed, 1/√max ρ): transport and plasma-oscillation limits.
double cfl_limit(const SpeedSummary& speeds, const Grid& grid);

inline constexpr double kCflFactor = 0.4;

}  // namespace hydroclose::sim
