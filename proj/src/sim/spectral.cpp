#include "hydroclose/sim/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hydroclose::sim {

namespace {

fftw_complex* as_complex(void* p) { return static_cast<fftw_complex*>(p); }
fftw_plan as_plan(void* p) { return static_cast<fftw_plan>(p); }

}  // namespace

PeriodicOperator::PeriodicOperator(const Grid& grid, Discretization disc, KernelMode mode)
    : grid_(grid), disc_(disc), mode_(mode) {
    grid_.validate();
    const std::size_t nx = grid_.nx, nk = nx / 2 + 1;
    const int n = static_cast<int>(nx);
    real_ = fftw_alloc_real(nx);
    spec_ = fftw_alloc_complex(nk);
    // ESTIMATE keeps plan selection, and therefore rounding, reproducible.
    plan_fwd_ = fftw_plan_dft_r2c_1d(n, real_, as_complex(spec_), FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_c2r_1d(n, as_complex(spec_), real_, FFTW_ESTIMATE);

    mult_.assign(nk, 0.0);
    const double base = 2.0 * std::numbers::pi / grid_.L;
    for (std::size_t m = 0; m < nk; ++m) {
        const double k = base * static_cast<double>(m);
        if (disc_ == Discretization::spectral) {
            if (3 * m < nx && 2 * m != nx) mult_[m] = k;
        } else {
            mult_[m] = std::sin(k * grid_.dx()) / grid_.dx();
        }
    }
}

PeriodicOperator::~PeriodicOperator() {
    fftw_destroy_plan(as_plan(plan_fwd_));
    fftw_destroy_plan(as_plan(plan_bwd_));
    fftw_free(real_);
    fftw_free(spec_);
}

double PeriodicOperator::multiplier(std::size_t m) const { return mult_.at(m); }

void PeriodicOperator::forward(std::span<const double> f) {
    std::copy(f.begin(), f.end(), real_);
    fftw_execute(as_plan(plan_fwd_));
}

void PeriodicOperator::backward(std::span<double> f) {
    fftw_execute(as_plan(plan_bwd_));
    const double scale = 1.0 / static_cast<double>(grid_.nx);
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = real_[j] * scale;
}

void PeriodicOperator::derivative(std::span<const double> f, std::span<double> df) {
    const std::size_t nx = grid_.nx;
    if (f.size() != nx || df.size() != nx) throw std::invalid_argument("derivative: array size mismatch");
    if (disc_ == Discretization::central) {
        const double h = 0.5 / grid_.dx();
        const auto n = static_cast<std::ptrdiff_t>(nx);
        auto body = [&](std::ptrdiff_t j) {
            const std::size_t jp = static_cast<std::size_t>((j + 1) % n);
            const std::size_t jm = static_cast<std::size_t>((j + n - 1) % n);
            df[static_cast<std::size_t>(j)] = (f[jp] - f[jm]) * h;
        };
        if (mode_ == KernelMode::openmp) {
#pragma omp parallel for
            for (std::ptrdiff_t j = 0; j < n; ++j) body(j);
        } else {
            for (std::ptrdiff_t j = 0; j < n; ++j) body(j);
        }
        return;
    }
    forward(f);
    fftw_complex* s = as_complex(spec_);
    for (std::size_t m = 0; m < mult_.size(); ++m) {
        const double re = s[m][0], im = s[m][1];
        s[m][0] = -mult_[m] * im;
        s[m][1] = mult_[m] * re;
    }
    backward(df);
}

void PeriodicOperator::poisson(std::span<const double> rho, double n0, std::span<double> phi, std::span<double> E) {
    const std::size_t nx = grid_.nx;
    if (rho.size() != nx || phi.size() != nx || E.size() != nx)
        throw std::invalid_argument("poisson: array size mismatch");
    const double avg = mean(rho);
    if (!std::isfinite(avg) || std::abs(avg - n0) > 1e-10 * std::max(1.0, std::abs(n0))) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "neutrality violated: mean density " << avg << " vs background " << n0;
        throw SimulationError(msg.str());
    }
    forward(rho);
    fftw_complex* s = as_complex(spec_);
    const double base = 2.0 * std::numbers::pi / grid_.L;
    std::vector<double> phi_re(mult_.size()), phi_im(mult_.size());
    // The Nyquist mode is left out of φ as well as E, so that ½∫E² has
    // gradient exactly φ with respect to ρ.
    for (std::size_t m = 1; m < mult_.size(); ++m) {
        if (2 * m == nx) continue;
        const double k = base * static_cast<double>(m);
        phi_re[m] = s[m][0] / (k * k);
        phi_im[m] = s[m][1] / (k * k);
    }
    for (std::size_t m = 0; m < mult_.size(); ++m) {
        s[m][0] = phi_re[m];
        s[m][1] = phi_im[m];
    }
    backward(phi);
    // E = −∂ₓφ: multiply by −ik.
    for (std::size_t m = 0; m < mult_.size(); ++m) {
        const double k = base * static_cast<double>(m);
        s[m][0] = k * phi_im[m];
        s[m][1] = -k * phi_re[m];
    }
    backward(E);
}

}  // namespace hydroclose::sim
