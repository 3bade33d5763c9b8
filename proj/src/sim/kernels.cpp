#include "hydroclose/sim/kernels.hpp"

#include <array>
#include <stdexcept>

namespace hydroclose::sim {

ClosureKernels::ClosureKernels(const ClosureFamily& family) : nvars(family.nvars()) {
    if (nvars > kMaxNormalVars) throw std::invalid_argument("too many normal variables for the grid kernels");
    const MultiPoly& m1 = family.mu.at(1);
    // The cold closure (N = 2) stops at μ₁; its μ₂ vanishes.
    const MultiPoly m2 = family.mu.size() > 2 ? family.mu[2] : MultiPoly(nvars);
    const MultiPoly w = m2 - m1 * m1;
    W = CompiledPoly(w);
    mu1 = CompiledPoly(m1);
    for (std::size_t k = 0; k < nvars; ++k) {
        dW.emplace_back(diff(w, k));
        dmu1.emplace_back(diff(m1, k));
    }
    for (std::size_t k = 0; k < nvars; ++k)
        for (std::size_t l = 0; l < nvars; ++l) hessW.emplace_back(diff(diff(w, k), l));
    for (std::size_t k = 0; k < nvars; ++k)
        for (std::size_t l = 0; l < nvars; ++l) g.push_back(to_double(family.metric.g(k, l)));
}

namespace {

void resize_rows(std::vector<std::vector<double>>& a, std::size_t rows, std::size_t nx) {
    a.resize(rows);
    for (auto& r : a) r.assign(nx, 0.0);
}

}  // namespace

void FluidTerms::resize(std::size_t nx, std::size_t nvars) {
    A.assign(nx, 0.0);
    flux.assign(nx, 0.0);
    DA.assign(nx, 0.0);
    Dflux.assign(nx, 0.0);
    resize_rows(B, nvars, nx);
    resize_rows(gB_rho, nvars, nx);
    resize_rows(Dnu, nvars, nx);
    resize_rows(DgB_rho, nvars, nx);
}

void FlatGradients::resize(std::size_t nx, std::size_t nvars) {
    Hrho.assign(nx, 0.0);
    Hpsi.assign(nx, 0.0);
    resize_rows(Hnut, nvars, nx);
}

void fluid_point_terms(const ClosureKernels& ck, const FieldState& s, std::span<const double> phi, FluidTerms& t,
                       KernelMode mode) {
    const std::size_t K = ck.nvars;
    for_points(s.nx(), mode, [&](std::size_t j) {
        std::array<double, kMaxNormalVars> nu{}, b{};
        for (std::size_t k = 0; k < K; ++k) nu[k] = s.nu[k][j];
        const double rho = s.rho[j], u = s.u[j];
        const double W = ck.W(nu.data());
        t.A[j] = 0.5 * u * u + 1.5 * rho * rho * W + phi[j];
        t.flux[j] = rho * u;
        const double half_rho3 = 0.5 * rho * rho * rho;
        for (std::size_t k = 0; k < K; ++k) {
            b[k] = half_rho3 * ck.dW[k](nu.data());
            t.B[k][j] = b[k];
        }
        for (std::size_t k = 0; k < K; ++k) {
            double acc = 0.0;
            for (std::size_t l = 0; l < K; ++l) acc += ck.g[k * K + l] * b[l];
            t.gB_rho[k][j] = acc / rho;
        }
    });
}

void fluid_combine(const FieldState& s, const FluidTerms& t, FieldState& out, KernelMode mode) {
    const std::size_t K = s.nvars();
    for_points(s.nx(), mode, [&](std::size_t j) {
        const double inv_rho = 1.0 / s.rho[j];
        out.rho[j] = -t.Dflux[j];
        double coupling = 0.0;
        for (std::size_t k = 0; k < K; ++k) coupling += t.B[k][j] * t.Dnu[k][j];
        out.u[j] = -t.DA[j] + coupling * inv_rho;
        for (std::size_t k = 0; k < K; ++k) out.nu[k][j] = -s.u[j] * t.Dnu[k][j] - t.DgB_rho[k][j] * inv_rho;
    });
}

void flat_gradients(const ClosureKernels& ck, std::span<const double> rho, std::span<const double> psi,
                    const std::vector<std::vector<double>>& nut, std::span<const double> phi, FlatGradients& out,
                    KernelMode mode) {
    const std::size_t K = ck.nvars;
    for_points(rho.size(), mode, [&](std::size_t j) {
        std::array<double, kMaxNormalVars> nu{};
        const double r = rho[j], inv_r = 1.0 / r;
        for (std::size_t k = 0; k < K; ++k) nu[k] = nut[k][j] * inv_r;
        const double m1 = ck.mu1(nu.data());
        const double u = psi[j] + r * m1;
        const double W = ck.W(nu.data());
        const double mom = r * u;
        const double half_rho3 = 0.5 * r * r * r;
        double b_dot_nu = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            const double b = half_rho3 * ck.dW[k](nu.data());
            b_dot_nu += b * nu[k];
            out.Hnut[k][j] = mom * ck.dmu1[k](nu.data()) + b * inv_r;
        }
        const double A = 0.5 * u * u + 1.5 * r * r * W + phi[j];
        out.Hpsi[j] = mom;
        out.Hrho[j] = A - mom * m1 - b_dot_nu * inv_r;
    });
}

void stream_point_terms(const StreamState& s, std::span<const double> phi, std::vector<std::vector<double>>& flux,
                        std::vector<std::vector<double>>& bernoulli, KernelMode mode) {
    const std::size_t M = s.streams();
    for_points(s.nx(), mode, [&](std::size_t j) {
        for (std::size_t k = 0; k < M; ++k) {
            const double v = s.v[k][j];
            flux[k][j] = s.a[k][j] * v;
            bernoulli[k][j] = 0.5 * v * v + phi[j];
        }
    });
}

}  // namespace hydroclose::sim
