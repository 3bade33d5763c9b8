#pragma once

#include "hydroclose/sim/grid.hpp"

#include <complex>
#include <optional>
#include <span>

namespace hydroclose::sim {

// (2/L)∫ f e^{−ikx} dx with k = 2π·mode/L; the real part is the cosine
// amplitude of f at that mode.
std::complex<double> mode_amplitude(std::span<const double> f, const Grid& grid, int mode);

// Angular frequency from the zero crossings of a sampled oscillation,
// located by linear interpolation: π·(crossings − 1)/(t_last − t_first).
// Needs at least three crossings.
std::optional<double> zero_crossing_frequency(std::span<const double> t, std::span<const double> y);

}  // namespace hydroclose::sim
