#include "hydroclose/sim/analysis.hpp"

#include <numbers>
#include <stdexcept>
#include <vector>

namespace hydroclose::sim {

std::complex<double> mode_amplitude(std::span<const double> f, const Grid& grid, int mode) {
    const double k = 2.0 * std::numbers::pi * mode / grid.L;
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < f.size(); ++j) acc += f[j] * std::polar(1.0, -k * grid.x(j));
    return acc * (2.0 * grid.dx() / grid.L);
}

std::optional<double> zero_crossing_frequency(std::span<const double> t, std::span<const double> y) {
    if (t.size() != y.size()) throw std::invalid_argument("time and signal lengths differ");
    std::vector<double> crossings;
    for (std::size_t i = 1; i < y.size(); ++i) {
        if (y[i - 1] == 0.0) {
            if (crossings.empty() || crossings.back() != t[i - 1]) crossings.push_back(t[i - 1]);
            continue;
        }
        if ((y[i - 1] < 0.0) != (y[i] < 0.0) && y[i] != 0.0) {
            const double w = y[i - 1] / (y[i - 1] - y[i]);
            crossings.push_back(t[i - 1] + w * (t[i] - t[i - 1]));
        }
    }
    if (crossings.size() < 3) return std::nullopt;
    const double span = crossings.back() - crossings.front();
    return std::numbers::pi * static_cast<double>(crossings.size() - 1) / span;
}

}  // namespace hydroclose::sim
