#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>

namespace hydroclose::sim {

struct Grid {
    double L = 2.0 * std::numbers::pi;
    std::size_t nx = 64;

    double dx() const { return L / static_cast<double>(nx); }
    double x(std::size_t j) const { return static_cast<double>(j) * dx(); }
    // Throws std::invalid_argument for nx < 8, odd nx or L <= 0.
    void validate() const;
};

enum class Discretization { spectral, central };
enum class KernelMode { serial, openmp };

// Raised when a run must stop: NaN, loss of positivity, broken neutrality.
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Periodic rectangle rule, i.e. the exact integral of the trigonometric
// interpolant.
double integrate(std::span<const double> f, const Grid& grid);
double mean(std::span<const double> f);

}  // namespace hydroclose::sim
