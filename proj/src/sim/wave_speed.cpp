#include "hydroclose/sim/wave_speed.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace hydroclose::sim {

std::vector<std::complex<double>> characteristic_speeds(const ClosureKernels& ck, double rho, double u,
                                                        std::span<const double> nu) {
    const std::size_t K = ck.nvars;
    const auto n = static_cast<Eigen::Index>(K + 2);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    const double* x = nu.data();
    const double W = ck.W(x);
    std::vector<double> grad(K);
    for (std::size_t k = 0; k < K; ++k) grad[k] = ck.dW[k](x);

    A(0, 0) = u;
    A(0, 1) = rho;
    A(1, 0) = 3.0 * rho * W;
    A(1, 1) = u;
    for (std::size_t k = 0; k < K; ++k) {
        const auto r = static_cast<Eigen::Index>(k + 2);
        A(1, r) = rho * rho * grad[k];
        double g_grad = 0.0;
        for (std::size_t l = 0; l < K; ++l) g_grad += ck.g[k * K + l] * grad[l];
        A(r, 0) = g_grad;
        A(r, r) += u;
        for (std::size_t l = 0; l < K; ++l) {
            double gh = 0.0;
            for (std::size_t p = 0; p < K; ++p) gh += ck.g[k * K + p] * ck.hessW[p * K + l](x);
            A(r, static_cast<Eigen::Index>(l + 2)) += 0.5 * rho * gh;
        }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(A, false);
    std::vector<std::complex<double>> out;
    for (Eigen::Index i = 0; i < n; ++i) out.push_back(solver.eigenvalues()(i));
    return out;
}

SpeedSummary speed_summary(const ClosureKernels& ck, const FieldState& s) {
    SpeedSummary r;
    std::array<double, kMaxNormalVars> nu{};
    for (std::size_t j = 0; j < s.nx(); ++j) {
        for (std::size_t k = 0; k < ck.nvars; ++k) nu[k] = s.nu[k][j];
        for (const auto& lam : characteristic_speeds(ck, s.rho[j], s.u[j], std::span<const double>(nu.data(), ck.nvars))) {
            r.max_speed = std::max(r.max_speed, std::abs(lam));
            r.max_imag = std::max(r.max_imag, std::abs(lam.imag()));
        }
        r.max_density = std::max(r.max_density, s.rho[j]);
    }
    return r;
}

SpeedSummary speed_summary(const StreamState& s) {
    SpeedSummary r;
    for (std::size_t j = 0; j < s.nx(); ++j) {
        double total = 0.0;
        for (std::size_t k = 0; k < s.streams(); ++k) {
            r.max_speed = std::max(r.max_speed, std::abs(s.v[k][j]));
            total += s.a[k][j];
        }
        r.max_density = std::max(r.max_density, total);
    }
    return r;
}

double cfl_limit(const SpeedSummary& speeds, const Grid& grid) {
    double dt = std::numeric_limits<double>::infinity();
    if (speeds.max_speed > 0) dt = kCflFactor * grid.dx() / speeds.max_speed;
    if (speeds.max_density > 0) dt = std::min(dt, 1.0 / std::sqrt(speeds.max_density));
    return dt;
}

}  // namespace hydroclose::sim
