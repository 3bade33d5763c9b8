#pragma once

#include <cstddef>
#include <vector>

namespace hydroclose::sim {

// Fluid fields in normal variables. The same layout is used for time
// derivatives (n0 and t are then unused).
struct FieldState {
    std::vector<double> rho, u;
    std::vector<std::vector<double>> nu;  // (N−2) × nx
    double n0 = 1.0;
    double t = 0.0;

    std::size_t nx() const { return rho.size(); }
    std::size_t nvars() const { return nu.size(); }
    static FieldState zeros(std::size_t nx, std::size_t nvars);
};

struct StreamState {
    std::vector<std::vector<double>> a, v;  // M × nx
    double n0 = 1.0;
    double t = 0.0;

    std::size_t nx() const { return a.empty() ? 0 : a.front().size(); }
    std::size_t streams() const { return a.size(); }
    static StreamState zeros(std::size_t nx, std::size_t streams);
};

// y += c·x over every array (shapes must match).
void axpy(FieldState& y, double c, const FieldState& x);
void axpy(StreamState& y, double c, const StreamState& x);

// Throws SimulationError on NaN/Inf anywhere or on density below 1e−12.
void check_state(const FieldState& s);
void check_state(const StreamState& s);

inline constexpr double kPositivityFloor = 1e-12;

}  // namespace hydroclose::sim
