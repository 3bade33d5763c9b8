#pragma once

#include "hydroclose/matrix.hpp"
#include "hydroclose/multipoly.hpp"

#include <cstddef>
#include <vector>

namespace hydroclose {

// First-order bracket {F,G} = ∫ (∂ₓF_n α_nm G_m + F_n β_nm G_m) dx.
// Entries are polynomials in nparams parameter variables x_j, and
// β_nm = Σ_j β_nmj ∂ₓx_j. Fields and parameters need not coincide:
// e.g. fields μ₁..μ_m written as polynomials of normal variables ν.
struct HydroBracket {
    std::size_t nfields = 0;
    std::size_t nparams = 0;
    PolyMatrix alpha;
    std::vector<MultiPoly> beta;

    static HydroBracket zero(std::size_t nfields, std::size_t nparams) {
        HydroBracket b;
        b.nfields = nfields;
        b.nparams = nparams;
        b.alpha = PolyMatrix(nfields, nfields, MultiPoly(nparams));
        b.beta.assign(nfields * nfields * nparams, MultiPoly(nparams));
        return b;
    }

    MultiPoly& beta_at(std::size_t n, std::size_t m, std::size_t j) { return beta[(n * nfields + m) * nparams + j]; }
    const MultiPoly& beta_at(std::size_t n, std::size_t m, std::size_t j) const {
        return beta[(n * nfields + m) * nparams + j];
    }
};

}  // namespace hydroclose
