#pragma once

#include "hydroclose/closures.hpp"
#include "hydroclose/multipoly.hpp"
#include "hydroclose/sim/grid.hpp"
#include "hydroclose/sim/state.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace hydroclose::sim {

// Runs f(j) for every grid point. Bodies write disjoint outputs, so the
// OpenMP and serial paths give bitwise identical results.
template <class F>
void for_points(std::size_t count, KernelMode mode, F&& f) {
    const auto n = static_cast<std::ptrdiff_t>(count);
    if (mode == KernelMode::openmp) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t j = 0; j < n; ++j) f(static_cast<std::size_t>(j));
    } else {
        for (std::ptrdiff_t j = 0; j < n; ++j) f(static_cast<std::size_t>(j));
    }
}

inline constexpr std::size_t kMaxNormalVars = 16;

// Closure data needed on the grid: W = μ₂ − μ₁², μ₁ and their derivatives,
// compiled to double coefficients, plus the metric.
struct ClosureKernels {
    std::size_t nvars = 0;
    CompiledPoly W, mu1;
    std::vector<CompiledPoly> dW, dmu1;
    std::vector<CompiledPoly> hessW;  // nvars × nvars, row-major
    std::vector<double> g;            // nvars × nvars, row-major

    explicit ClosureKernels(const ClosureFamily& family);
};

// Pointwise quantities of the fluid right-hand side and their derivatives.
struct FluidTerms {
    std::vector<double> A;                    // u²/2 + (3/2)ρ²W + φ
    std::vector<double> flux;                 // ρu
    std::vector<std::vector<double>> B;       // ½ρ³∂_kW
    std::vector<std::vector<double>> gB_rho;  // (g B)_k / ρ
    std::vector<double> DA, Dflux;
    std::vector<std::vector<double>> Dnu, DgB_rho;

    void resize(std::size_t nx, std::size_t nvars);
};

void fluid_point_terms(const ClosureKernels& ck, const FieldState& s, std::span<const double> phi, FluidTerms& t,
                       KernelMode mode);

// out.rho = −Dflux, out.u = −DA + Σ B_k Dν_k/ρ, out.nu_k = −u Dν_k − DgB_rho_k/ρ.
void fluid_combine(const FieldState& s, const FluidTerms& t, FieldState& out, KernelMode mode);

// Gradients of H in the flat variables (ρ, ψ, ν̃ = ρν):
// H_ψ = ρu, H_ν̃ = ρu∂μ₁ + B/ρ, H_ρ = A − ρuμ₁ − B·ν/ρ.
struct FlatGradients {
    std::vector<double> Hrho, Hpsi;
    std::vector<std::vector<double>> Hnut;

    void resize(std::size_t nx, std::size_t nvars);
};

// rho, psi, nut are the flat variables; phi is the electric potential.
void flat_gradients(const ClosureKernels& ck, std::span<const double> rho, std::span<const double> psi,
                    const std::vector<std::vector<double>>& nut, std::span<const double> phi, FlatGradients& out,
                    KernelMode mode);

// Stream flux a_k v_k and Bernoulli term v_k²/2 + φ.
void stream_point_terms(const StreamState& s, std::span<const double> phi, std::vector<std::vector<double>>& flux,
                        std::vector<std::vector<double>>& bernoulli, KernelMode mode);

}  // namespace hydroclose::sim
