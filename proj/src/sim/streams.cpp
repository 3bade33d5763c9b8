#include "hydroclose/sim/streams.hpp"

#include "hydroclose/identities.hpp"
#include "hydroclose/moments.hpp"
#include "hydroclose/sim/kernels.hpp"
#include "hydroclose/sim/wave_speed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hydroclose::sim {

StreamModel::StreamModel(const Grid& grid, Discretization disc, KernelMode mode)
    : grid_(grid), mode_(mode), op_(std::make_unique<PeriodicOperator>(grid, disc, mode)) {
    phi_.assign(grid_.nx, 0.0);
    E_.assign(grid_.nx, 0.0);
    scratch_.assign(grid_.nx, 0.0);
}

std::vector<double> StreamModel::density(const StreamState& s) const {
    std::vector<double> rho(s.nx(), 0.0);
    for (const auto& a : s.a)
        for (std::size_t j = 0; j < rho.size(); ++j) rho[j] += a[j];
    return rho;
}

void StreamModel::rhs(const StreamState& s, StreamState& out) {
    const std::size_t M = s.streams();
    if (s.nx() != grid_.nx || M == 0) throw std::invalid_argument("stream state shape does not match the model");
    if (out.nx() != grid_.nx || out.streams() != M) out = StreamState::zeros(grid_.nx, M);
    op_->poisson(density(s), s.n0, phi_, E_);
    flux_.assign(M, std::vector<double>(grid_.nx, 0.0));
    bernoulli_.assign(M, std::vector<double>(grid_.nx, 0.0));
    stream_point_terms(s, phi_, flux_, bernoulli_, mode_);
    for (std::size_t k = 0; k < M; ++k) {
        op_->derivative(flux_[k], out.a[k]);
        op_->derivative(bernoulli_[k], out.v[k]);
        for_points(grid_.nx, mode_, [&](std::size_t j) {
            out.a[k][j] = -out.a[k][j];
            out.v[k][j] = -out.v[k][j];
        });
    }
}

void StreamModel::step(StreamState& s, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    const std::size_t M = s.streams();
    StreamState k1 = StreamState::zeros(grid_.nx, M), k2 = k1, k3 = k1, k4 = k1;
    rhs(s, k1);
    StreamState y = s;
    axpy(y, 0.5 * dt, k1);
    rhs(y, k2);
    y = s;
    axpy(y, 0.5 * dt, k2);
    rhs(y, k3);
    y = s;
    axpy(y, dt, k3);
    rhs(y, k4);
    axpy(s, dt / 6.0, k1);
    axpy(s, dt / 3.0, k2);
    axpy(s, dt / 3.0, k3);
    axpy(s, dt / 6.0, k4);
    s.t += dt;
    check_state(s);
}

StreamRecord StreamModel::diagnostics(const StreamState& s) {
    StreamRecord r;
    r.t = s.t;
    op_->poisson(density(s), s.n0, phi_, E_);
    double kinetic = 0.0, field = 0.0;
    for (std::size_t j = 0; j < s.nx(); ++j) {
        for (std::size_t k = 0; k < s.streams(); ++k) {
            const double a = s.a[k][j], v = s.v[k][j];
            kinetic += 0.5 * a * v * v;
            r.mass += a;
            r.momentum += a * v;
        }
        field += 0.5 * E_[j] * E_[j];
    }
    const double dx = grid_.dx();
    r.field_energy = field * dx;
    r.H = kinetic * dx + r.field_energy;
    r.mass *= dx;
    r.momentum *= dx;
    r.min_dv = std::numeric_limits<double>::infinity();
    for (const auto& v : s.v) {
        op_->derivative(v, scratch_);
        r.min_dv = std::min(r.min_dv, *std::min_element(scratch_.begin(), scratch_.end()));
    }
    return r;
}

StreamRunResult run_streams(StreamModel& model, StreamState& state, const RunOptions& options,
                            const StreamObserver& observer) {
    StreamRunResult result;
    if (!(options.t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    if (options.dt < 0.0) throw std::invalid_argument("dt must be positive");
    const std::size_t stride = std::max<std::size_t>(1, options.stride);
    try {
        check_state(state);
        const double limit = cfl_limit(speed_summary(state), model.grid());
        result.dt = options.dt > 0.0 ? options.dt : limit;
        if (result.dt > limit) {
            std::ostringstream msg;
            msg << "CFL warning: dt = " << result.dt << " exceeds the stability estimate " << limit;
            result.warnings.push_back(msg.str());
        }
        const double t0 = state.t;
        const auto nsteps = static_cast<std::size_t>(std::ceil(options.t_end / result.dt - 1e-9));
        StreamRecord rec = model.diagnostics(state);
        result.records.push_back(rec);
        if (observer) observer(state, rec);
        for (std::size_t n = 1; n <= nsteps; ++n) {
            const double target = std::min(t0 + static_cast<double>(n) * result.dt, t0 + options.t_end);
            model.step(state, target - state.t);
            state.t = target;
            ++result.steps;
            const bool last = n == nsteps;
            rec = model.diagnostics(state);
            if (rec.min_dv < kBreakingThreshold) {
                result.broke = true;
                result.records.push_back(rec);
                if (observer) observer(state, rec);
                std::ostringstream msg;
                msg << "wave breaking detected at t = " << state.t;
                result.warnings.push_back(msg.str());
                break;
            }
            if (n % stride == 0 || last) {
                result.records.push_back(rec);
                if (observer) observer(state, rec);
            }
        }
        result.completed = !result.broke;
    } catch (const SimulationError& e) {
        result.error = e.what();
    }
    result.end_time = state.t;
    return result;
}

std::vector<std::vector<double>> stream_moments(const StreamState& s, std::size_t count) {
    std::vector<std::vector<double>> P(count, std::vector<double>(s.nx(), 0.0));
    for (std::size_t j = 0; j < s.nx(); ++j) {
        for (std::size_t k = 0; k < s.streams(); ++k) {
            double vn = 1.0;
            for (std::size_t n = 0; n < count; ++n) {
                P[n][j] += s.a[k][j] * vn;
                vn *= s.v[k][j];
            }
        }
    }
    return P;
}

std::vector<std::vector<double>> fluid_moments(const ClosureFamily& family, const FieldState& s, std::size_t count) {
    const std::size_t K = family.nvars();
    std::vector<CompiledPoly> mu;
    for (std::size_t n = 0; n < count; ++n) {
        if (n < family.mu.size()) {
            mu.emplace_back(family.mu[n]);
            continue;
        }
        // Past the stored list, fall back to the family's closed form.
        const auto extra = reference_mu(family, static_cast<int>(n));
        if (!extra) throw std::invalid_argument("closure does not provide that many moments");
        mu.emplace_back(*extra);
    }
    std::vector<std::vector<double>> P(count, std::vector<double>(s.nx(), 0.0));
    const CompiledPoly mu1(family.mu.at(1));
    std::vector<double> nu(std::max<std::size_t>(K, 1));
    for (std::size_t j = 0; j < s.nx(); ++j) {
        for (std::size_t k = 0; k < K; ++k) nu[k] = s.nu[k][j];
        CenteredMoments<double> m;
        m.kind = CenterKind::psi;
        m.rho = s.rho[j];
        m.center = s.u[j] - s.rho[j] * mu1(nu.data());
        for (std::size_t n = 1; n < count; ++n) m.values.push_back(mu[n](nu.data()));
        const std::vector<double> p = p_from_mu(m);
        for (std::size_t n = 0; n < count; ++n) P[n][j] = p[n];
    }
    return P;
}

FieldState fluid_from_streams(const StreamState& s) {
    const std::size_t M = s.streams(), nx = s.nx();
    if (M == 0) throw std::invalid_argument("no streams");
    FieldState f = FieldState::zeros(nx, 2 * (M - 1));
    f.n0 = s.n0;
    f.t = s.t;
    std::vector<double> a(M), v(M);
    for (std::size_t j = 0; j < nx; ++j) {
        for (std::size_t k = 0; k < M; ++k) {
            a[k] = s.a[k][j];
            v[k] = s.v[k][j];
        }
        const auto n = multidelta_normal_map<double>(a, v);
        f.rho[j] = n.rho;
        f.u[j] = n.u;
        for (std::size_t k = 0; k + 1 < M; ++k) {
            f.nu[k][j] = n.xi[k];
            f.nu[M - 1 + k][j] = n.eta[k];
        }
    }
    return f;
}

}  // namespace hydroclose::sim
