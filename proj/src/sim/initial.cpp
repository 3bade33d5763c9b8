#include "hydroclose/sim/initial.hpp"

#include <cmath>
#include <stdexcept>

namespace hydroclose::sim {

namespace {

double angle(const Grid& grid, std::size_t j, int mode, double phase) {
    return 2.0 * std::numbers::pi * static_cast<double>(mode) * grid.x(j) / grid.L + phase;
}

}  // namespace

FieldState homogeneous_state(const Grid& grid, double n0, double u0, std::span<const double> nu0) {
    grid.validate();
    if (!(n0 > 0.0)) throw std::invalid_argument("background density must be positive");
    FieldState s = FieldState::zeros(grid.nx, nu0.size());
    s.n0 = n0;
    for (std::size_t j = 0; j < grid.nx; ++j) {
        s.rho[j] = n0;
        s.u[j] = u0;
        for (std::size_t k = 0; k < nu0.size(); ++k) s.nu[k][j] = nu0[k];
    }
    return s;
}

void perturb(FieldState& s, const Grid& grid, const Perturbation& p) {
    if (p.mode < 0) throw std::invalid_argument("perturbation mode must be nonnegative");
    std::vector<double>* row = nullptr;
    switch (p.field) {
        case PerturbedField::rho:
            if (p.mode == 0) throw std::invalid_argument("a density perturbation with mode 0 breaks neutrality");
            row = &s.rho;
            break;
        case PerturbedField::u:
            row = &s.u;
            break;
        case PerturbedField::nu:
            if (p.index >= s.nvars()) throw std::invalid_argument("perturbation index beyond the normal variables");
            row = &s.nu[p.index];
            break;
    }
    for (std::size_t j = 0; j < grid.nx; ++j) (*row)[j] += p.amplitude * std::cos(angle(grid, j, p.mode, p.phase));
}

StreamState multi_stream_state(const Grid& grid, double n0, std::span<const BeamSpec> beams) {
    grid.validate();
    if (beams.empty()) throw std::invalid_argument("need at least one beam");
    if (!(n0 > 0.0)) throw std::invalid_argument("background density must be positive");
    double total = 0.0;
    for (const auto& b : beams) {
        if (!(b.weight > 0.0)) throw std::invalid_argument("beam weights must be positive");
        if (b.mode < 1 && b.density_amplitude != 0.0)
            throw std::invalid_argument("a density perturbation with mode 0 breaks neutrality");
        total += b.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("beam weights must sum to one");

    StreamState s = StreamState::zeros(grid.nx, beams.size());
    s.n0 = n0;
    for (std::size_t k = 0; k < beams.size(); ++k) {
        const BeamSpec& b = beams[k];
        for (std::size_t j = 0; j < grid.nx; ++j) {
            const double th = angle(grid, j, b.mode, b.phase);
            s.a[k][j] = n0 * b.weight * (1.0 + b.density_amplitude * std::cos(th));
            s.v[k][j] = b.velocity + b.velocity_amplitude * std::sin(th);
        }
    }
    return s;
}

}  // namespace hydroclose::sim
