#include "hydroclose/sim/fluid.hpp"
#include "hydroclose/sim/wave_speed.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace hydroclose::sim {

// Flat variables: row 0 = ρ, row 1 = ψ, row 2+k = w_k with w = T ν̃.
struct FluidModel::Flat {
    std::vector<std::vector<double>> rows;
};

namespace {

constexpr int kPairSubflow = -1;

void require_positive(std::span<const double> rho, double t) {
    for (std::size_t j = 0; j < rho.size(); ++j) {
        if (!(rho[j] > 0.0)) {
            std::ostringstream msg;
            msg << "nonpositive density encountered at grid point " << j << ", t = " << t;
            throw SimulationError(msg.str());
        }
    }
}

}  // namespace

FluidModel::FluidModel(ClosureFamily family, const Grid& grid, Discretization disc, KernelMode mode)
    : family_(std::move(family)), grid_(grid), mode_(mode), kernels_(family_),
      op_(std::make_unique<PeriodicOperator>(grid, disc, mode)) {
    const std::size_t K = family_.nvars();
    terms_.resize(grid_.nx, K);
    phi_.assign(grid_.nx, 0.0);
    E_.assign(grid_.nx, 0.0);

    split_ok_ = family_.mu.at(1) == quadratic_mu1(family_.metric.g);
    if (split_ok_ && K > 0) {
        const Congruence c = congruence_diagonalize(family_.metric.g);
        const RationalMatrix Tinv = inverse(c.transform);
        for (std::size_t k = 0; k < K; ++k) {
            d_.push_back(to_double(c.diagonal[k]));
            for (std::size_t l = 0; l < K; ++l) {
                T_.push_back(to_double(c.transform(k, l)));
                Tinv_.push_back(to_double(Tinv(k, l)));
            }
        }
    }
}

void FluidModel::field(const FieldState& s, std::vector<double>& phi, std::vector<double>& E) {
    phi.assign(grid_.nx, 0.0);
    E.assign(grid_.nx, 0.0);
    op_->poisson(s.rho, s.n0, phi, E);
}

void FluidModel::rhs(const FieldState& s, FieldState& out) {
    const std::size_t K = family_.nvars();
    if (s.nx() != grid_.nx || s.nvars() != K) throw std::invalid_argument("state shape does not match the model");
    require_positive(s.rho, s.t);
    if (out.nx() != grid_.nx || out.nvars() != K) out = FieldState::zeros(grid_.nx, K);

    op_->poisson(s.rho, s.n0, phi_, E_);
    fluid_point_terms(kernels_, s, phi_, terms_, mode_);
    op_->derivative(terms_.A, terms_.DA);
    op_->derivative(terms_.flux, terms_.Dflux);
    for (std::size_t k = 0; k < K; ++k) {
        op_->derivative(s.nu[k], terms_.Dnu[k]);
        op_->derivative(terms_.gB_rho[k], terms_.DgB_rho[k]);
    }
    fluid_combine(s, terms_, out, mode_);
}

FieldState FluidModel::rhs(const FieldState& s) {
    FieldState out = FieldState::zeros(grid_.nx, family_.nvars());
    rhs(s, out);
    return out;
}

void FluidModel::step(FieldState& s, double dt, Scheme scheme) {
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    if (scheme == Scheme::split) {
        if (!split_ok_) throw std::invalid_argument("split scheme needs the quadratic mu1 of the metric");
        step_split(s, dt);
    } else {
        step_rk4(s, dt);
    }
    s.t += dt;
    check_state(s);
}

void FluidModel::step_rk4(FieldState& s, double dt) {
    const std::size_t K = family_.nvars();
    FieldState k1 = FieldState::zeros(grid_.nx, K), k2 = k1, k3 = k1, k4 = k1;
    rhs(s, k1);
    FieldState y = s;
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
}

void FluidModel::flat_rhs(const Flat& y, int subflow, Flat& out) {
    const std::size_t nx = grid_.nx, K = family_.nvars();
    const auto& rho = y.rows[0];
    require_positive(rho, 0.0);

    std::vector<std::vector<double>> nut(K, std::vector<double>(nx, 0.0));
    for_points(nx, mode_, [&](std::size_t j) {
        for (std::size_t k = 0; k < K; ++k) {
            double acc = 0.0;
            for (std::size_t l = 0; l < K; ++l) acc += Tinv_[k * K + l] * y.rows[2 + l][j];
            nut[k][j] = acc;
        }
    });

    // The density mean is a Casimir of every sub-flow, so the background is
    // the mean itself up to round-off.
    op_->poisson(rho, mean(rho), phi_, E_);
    FlatGradients grad;
    grad.resize(nx, K);
    flat_gradients(kernels_, rho, y.rows[1], nut, phi_, grad, mode_);

    if (subflow == kPairSubflow) {
        op_->derivative(grad.Hpsi, out.rows[0]);
        op_->derivative(grad.Hrho, out.rows[1]);
        for (auto* row : {&out.rows[0], &out.rows[1]})
            for (double& x : *row) x = -x;
        return;
    }
    const auto k = static_cast<std::size_t>(subflow);
    std::vector<double> Hw(nx, 0.0);
    for_points(nx, mode_, [&](std::size_t j) {
        double acc = 0.0;
        for (std::size_t l = 0; l < K; ++l) acc += Tinv_[l * K + k] * grad.Hnut[l][j];
        Hw[j] = acc;
    });
    auto& dst = out.rows[2 + k];
    op_->derivative(Hw, dst);
    for (double& x : dst) x *= -d_[k];
}

void FluidModel::rk4_subflow(Flat& y, int subflow, double dt) {
    std::vector<std::size_t> rows;
    if (subflow == kPairSubflow)
        rows = {0, 1};
    else
        rows = {2 + static_cast<std::size_t>(subflow)};

    Flat k1 = y, k2 = y, k3 = y, k4 = y, stage = y;
    auto set_stage = [&](const Flat& k, double c) {
        for (std::size_t r : rows)
            for (std::size_t j = 0; j < y.rows[r].size(); ++j) stage.rows[r][j] = y.rows[r][j] + c * k.rows[r][j];
    };
    flat_rhs(y, subflow, k1);
    set_stage(k1, 0.5 * dt);
    flat_rhs(stage, subflow, k2);
    set_stage(k2, 0.5 * dt);
    flat_rhs(stage, subflow, k3);
    set_stage(k3, dt);
    flat_rhs(stage, subflow, k4);
    for (std::size_t r : rows)
        for (std::size_t j = 0; j < y.rows[r].size(); ++j)
            y.rows[r][j] += dt / 6.0 * (k1.rows[r][j] + 2.0 * k2.rows[r][j] + 2.0 * k3.rows[r][j] + k4.rows[r][j]);
}

void FluidModel::step_split(FieldState& s, double dt) {
    const std::size_t nx = grid_.nx, K = family_.nvars();
    require_positive(s.rho, s.t);
    op_->poisson(s.rho, s.n0, phi_, E_);  // neutrality check
    Flat y;
    y.rows.assign(2 + K, std::vector<double>(nx, 0.0));
    for (std::size_t j = 0; j < nx; ++j) {
        std::array<double, kMaxNormalVars> nu{};
        for (std::size_t k = 0; k < K; ++k) nu[k] = s.nu[k][j];
        const double r = s.rho[j];
        y.rows[0][j] = r;
        y.rows[1][j] = s.u[j] - r * kernels_.mu1(nu.data());
        for (std::size_t k = 0; k < K; ++k) {
            double acc = 0.0;
            for (std::size_t l = 0; l < K; ++l) acc += T_[k * K + l] * r * nu[l];
            y.rows[2 + k][j] = acc;
        }
    }

    // Strang: ν-diagonal sub-flows first, then the (ρ, ψ) pair, mirrored.
    for (std::size_t k = 0; k < K; ++k) rk4_subflow(y, static_cast<int>(k), 0.5 * dt);
    rk4_subflow(y, kPairSubflow, dt);
    for (std::size_t k = K; k-- > 0;) rk4_subflow(y, static_cast<int>(k), 0.5 * dt);

    for (std::size_t j = 0; j < nx; ++j) {
        std::array<double, kMaxNormalVars> nu{};
        const double r = y.rows[0][j];
        for (std::size_t k = 0; k < K; ++k) {
            double acc = 0.0;
            for (std::size_t l = 0; l < K; ++l) acc += Tinv_[k * K + l] * y.rows[2 + l][j];
            nu[k] = acc / r;
        }
        s.rho[j] = r;
        s.u[j] = y.rows[1][j] + r * kernels_.mu1(nu.data());
        for (std::size_t k = 0; k < K; ++k) s.nu[k][j] = nu[k];
    }
}

namespace {

template <class F>
DiagnosticRecord quadrature(const FluidModel& m, const FieldState& s, const std::vector<double>& E, F&& transform) {
    const std::size_t K = s.nvars();
    const ClosureKernels& ck = m.kernels();
    DiagnosticRecord r;
    r.t = s.t;
    r.C.assign(K, 0.0);
    double kinetic = 0.0, field = 0.0;
    for (std::size_t j = 0; j < s.nx(); ++j) {
        std::array<double, kMaxNormalVars> nu{};
        for (std::size_t k = 0; k < K; ++k) nu[k] = s.nu[k][j];
        const double rho = s.rho[j], u = s.u[j];
        kinetic += transform(0.5 * (rho * u * u + rho * rho * rho * ck.W(nu.data())));
        field += 0.5 * E[j] * E[j];
        r.C_mass += transform(rho);
        r.C_psi += transform(u - rho * ck.mu1(nu.data()));
        for (std::size_t k = 0; k < K; ++k) r.C[k] += transform(rho * nu[k]);
        r.momentum += transform(rho * u);
    }
    const double dx = m.grid().dx();
    r.field_energy = field * dx;
    r.H = kinetic * dx + r.field_energy;
    r.C_mass *= dx;
    r.C_psi *= dx;
    for (double& c : r.C) c *= dx;
    r.momentum *= dx;
    return r;
}

}  // namespace

DiagnosticRecord FluidModel::diagnostics(const FieldState& s) {
    op_->poisson(s.rho, s.n0, phi_, E_);
    return quadrature(*this, s, E_, [](double x) { return x; });
}

DiagnosticRecord FluidModel::magnitudes(const FieldState& s) {
    op_->poisson(s.rho, s.n0, phi_, E_);
    return quadrature(*this, s, E_, [](double x) { return std::abs(x); });
}

RunResult run_fluid(FluidModel& model, FieldState& state, const RunOptions& options, const FluidObserver& observer) {
    RunResult result;
    if (!(options.t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    if (options.dt < 0.0) throw std::invalid_argument("dt must be positive");
    const std::size_t stride = std::max<std::size_t>(1, options.stride);

    auto record = [&] {
        DiagnosticRecord d = model.diagnostics(state);
        result.records.push_back(d);
        if (observer) observer(state, d);
    };

    try {
        check_state(state);
        const double limit = cfl_limit(speed_summary(model.kernels(), state), model.grid());
        result.dt = options.dt > 0.0 ? options.dt : limit;
        if (result.dt > limit) {
            std::ostringstream msg;
            msg << "CFL warning: dt = " << result.dt << " exceeds the stability estimate " << limit;
            result.warnings.push_back(msg.str());
        }
        const double t0 = state.t;
        const auto nsteps = static_cast<std::size_t>(std::ceil(options.t_end / result.dt - 1e-9));
        record();
        for (std::size_t n = 1; n <= nsteps; ++n) {
            const double target = std::min(t0 + static_cast<double>(n) * result.dt, t0 + options.t_end);
            model.step(state, target - state.t, options.scheme);
            state.t = target;
            ++result.steps;
            if (n % stride == 0 || n == nsteps) record();
        }
        result.completed = true;
    } catch (const SimulationError& e) {
        result.error = e.what();
    }
    return result;
}

double relative_drift(std::span<const double> series, double scale) {
    if (series.empty()) return 0.0;
    const double ref = std::max(std::abs(series.front()), std::abs(scale));
    double worst = 0.0;
    for (double x : series) worst = std::max(worst, std::abs(x - series.front()));
    return ref > 0.0 ? worst / ref : worst;
}

double DriftSummary::max_casimir() const {
    double m = std::max(C_mass, C_psi);
    for (double c : C) m = std::max(m, c);
    return m;
}

DriftSummary drift_summary(const std::vector<DiagnosticRecord>& records, const DiagnosticRecord& scale) {
    DriftSummary d;
    auto series = [&](auto get) {
        std::vector<double> out;
        for (const auto& r : records) out.push_back(get(r));
        return out;
    };
    d.H = relative_drift(series([](const DiagnosticRecord& r) { return r.H; }), scale.H);
    d.C_mass = relative_drift(series([](const DiagnosticRecord& r) { return r.C_mass; }), scale.C_mass);
    d.C_psi = relative_drift(series([](const DiagnosticRecord& r) { return r.C_psi; }), scale.C_psi);
    d.momentum = relative_drift(series([](const DiagnosticRecord& r) { return r.momentum; }), scale.momentum);
    for (std::size_t k = 0; k < scale.C.size(); ++k)
        d.C.push_back(relative_drift(series([k](const DiagnosticRecord& r) { return r.C.at(k); }), scale.C[k]));
    return d;
}

}  // namespace hydroclose::sim
