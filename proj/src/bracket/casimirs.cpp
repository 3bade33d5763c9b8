#include "hydroclose/bracket.hpp"

namespace hydroclose {

CasimirSet casimirs(const ClosureFamily& family) {
    CasimirSet set;
    set.densities.push_back({CasimirKind::mass, 0, "rho"});
    const MultiPoly& mu1 = family.mu.at(1);
    std::string psi = mu1.is_zero() ? "u" : "u - rho*(" + to_string(mu1, family.names) + ")";
    set.densities.push_back({CasimirKind::psi, 0, psi});
    for (std::size_t k = 0; k < family.nvars(); ++k)
        set.densities.push_back({CasimirKind::normal, k + 1, "rho*" + family.names[k]});
    return set;
}

std::vector<double> casimir_density_values(const ClosureFamily& family, double rho, double u,
                                           std::span<const double> nu) {
    if (nu.size() != family.nvars()) throw std::invalid_argument("wrong number of normal variables");
    std::vector<double> out;
    out.reserve(family.nfields);
    out.push_back(rho);
    out.push_back(u - rho * eval(family.mu.at(1), nu));
    for (double v : nu) out.push_back(rho * v);
    return out;
}

}  // namespace hydroclose
