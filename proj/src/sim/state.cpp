#include "hydroclose/sim/grid.hpp"
#include "hydroclose/sim/state.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hydroclose::sim {

FieldState FieldState::zeros(std::size_t nx, std::size_t nvars) {
    FieldState s;
    s.rho.assign(nx, 0.0);
    s.u.assign(nx, 0.0);
    s.nu.assign(nvars, std::vector<double>(nx, 0.0));
    return s;
}

StreamState StreamState::zeros(std::size_t nx, std::size_t streams) {
    StreamState s;
    s.a.assign(streams, std::vector<double>(nx, 0.0));
    s.v.assign(streams, std::vector<double>(nx, 0.0));
    return s;
}

namespace {

void axpy_row(std::vector<double>& y, double c, const std::vector<double>& x) {
    if (y.size() != x.size()) throw std::invalid_argument("axpy: shape mismatch");
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += c * x[j];
}

void axpy_rows(std::vector<std::vector<double>>& y, double c, const std::vector<std::vector<double>>& x) {
    if (y.size() != x.size()) throw std::invalid_argument("axpy: shape mismatch");
    for (std::size_t k = 0; k < y.size(); ++k) axpy_row(y[k], c, x[k]);
}

[[noreturn]] void fail(const std::string& what, std::size_t j, double t) {
    std::ostringstream msg;
    msg.precision(10);
    msg << what << " at grid point " << j << ", t = " << t;
    throw SimulationError(msg.str());
}

void check_finite(const std::vector<double>& row, const char* name, double t) {
    for (std::size_t j = 0; j < row.size(); ++j)
        if (!std::isfinite(row[j])) fail(std::string("NaN/Inf detected in ") + name, j, t);
}

void check_positive(const std::vector<double>& row, const char* name, double t) {
    for (std::size_t j = 0; j < row.size(); ++j)
        if (!(row[j] >= kPositivityFloor)) fail(std::string(name) + " fell below positivity floor", j, t);
}

}  // namespace

void axpy(FieldState& y, double c, const FieldState& x) {
    axpy_row(y.rho, c, x.rho);
    axpy_row(y.u, c, x.u);
    axpy_rows(y.nu, c, x.nu);
}

void axpy(StreamState& y, double c, const StreamState& x) {
    axpy_rows(y.a, c, x.a);
    axpy_rows(y.v, c, x.v);
}

void check_state(const FieldState& s) {
    check_finite(s.rho, "rho", s.t);
    check_finite(s.u, "u", s.t);
    for (const auto& row : s.nu) check_finite(row, "nu", s.t);
    check_positive(s.rho, "rho", s.t);
}

void check_state(const StreamState& s) {
    for (const auto& row : s.a) check_finite(row, "a", s.t);
    for (const auto& row : s.v) check_finite(row, "v", s.t);
    for (const auto& row : s.a) check_positive(row, "stream density", s.t);
}

}  // namespace hydroclose::sim
