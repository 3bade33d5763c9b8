#pragma once

#include "hydroclose/sim/grid.hpp"

#include <complex>
#include <span>
#include <vector>

namespace hydroclose::sim {

// Skew-symmetric periodic derivative D plus the spectral Poisson solver.
//
// spectral: multiplier i·k on modes |m| < nx/3 (2/3 rule), zero elsewhere and
//           at the Nyquist mode.
// central:  (f_{j+1} − f_{j−1})/(2Δx), multiplier i·sin(kΔx)/Δx.
//
// Owns FFTW plans and scratch buffers, so one instance per run/thread.
class PeriodicOperator {
public:
    PeriodicOperator(const Grid& grid, Discretization disc, KernelMode mode = KernelMode::openmp);
    ~PeriodicOperator();
    PeriodicOperator(const PeriodicOperator&) = delete;
    PeriodicOperator& operator=(const PeriodicOperator&) = delete;

    const Grid& grid() const { return grid_; }
    Discretization discretization() const { return disc_; }

    void derivative(std::span<const double> f, std::span<double> df);

    // −∂ₓ²φ = ρ − n₀ with zero-mean φ, and E = −∂ₓφ (unfiltered spectral
    // derivative). Throws SimulationError if mean(ρ) differs from n₀ by more
    // than 1e−10 (relative).
    void poisson(std::span<const double> rho, double n0, std::span<double> phi, std::span<double> E);

    // Fourier multiplier of D at mode index m (0 ≤ m ≤ nx/2), imaginary part.
    double multiplier(std::size_t m) const;

private:
    void forward(std::span<const double> f);
    void backward(std::span<double> f);

    Grid grid_;
    Discretization disc_;
    KernelMode mode_;
    std::vector<double> mult_;
    double* real_ = nullptr;
    void* spec_ = nullptr;  // fftw_complex*
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
};

}  // namespace hydroclose::sim
