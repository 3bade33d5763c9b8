#include "hydroclose/sim/grid.hpp"

#include <numeric>

namespace hydroclose::sim {

void Grid::validate() const {
    if (nx < 8) throw std::invalid_argument("grid needs nx >= 8");
    if (nx % 2 != 0) throw std::invalid_argument("grid needs an even nx");
    if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("domain length must be positive");
}

double integrate(std::span<const double> f, const Grid& grid) {
    return std::accumulate(f.begin(), f.end(), 0.0) * grid.dx();
}

double mean(std::span<const double> f) {
    return f.empty() ? 0.0 : std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(f.size());
}

}  // namespace hydroclose::sim
