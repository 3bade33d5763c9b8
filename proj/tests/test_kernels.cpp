#include "hydroclose/closures.hpp"
#include "hydroclose/sim/fluid.hpp"
#include "hydroclose/sim/initial.hpp"
#include "hydroclose/sim/streams.hpp"

#include <doctest.h>
#include <omp.h>

#include <numbers>

using namespace hydroclose;
using namespace hydroclose::sim;

namespace {

bool same(const FieldState& a, const FieldState& b) {
    return a.rho == b.rho && a.u == b.u && a.nu == b.nu;
}

FieldState perturbed(const ClosureFamily& f, const Grid& g) {
    std::vector<double> nu0;
    for (std::size_t k = 0; k < f.nvars(); ++k) nu0.push_back(0.3 + 0.1 * static_cast<double>(k));
    FieldState s = homogeneous_state(g, 1.0, 0.1, nu0);
    perturb(s, g, {PerturbedField::rho, 0, 0.05, 1, 0.2});
    perturb(s, g, {PerturbedField::u, 0, 0.03, 2, 0.0});
    for (std::size_t k = 0; k < f.nvars(); ++k) perturb(s, g, {PerturbedField::nu, k, 0.02, 3, 0.1});
    return s;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("OpenMP and serial kernels agree bitwise") {
    omp_set_num_threads(4);
    const Grid g{2.0 * std::numbers::pi, 64};
    for (const auto& f : {make_cold(), make_burby(3), make_multidelta(2), make_fourfield(Rational(1)),
                          make_waterbag({Rational(1), Rational(1), Rational(-2)})}) {
        FluidModel par(f, g, Discretization::spectral, KernelMode::openmp);
        FluidModel ser(f, g, Discretization::spectral, KernelMode::serial);
        FieldState a = perturbed(f, g), b = a;
        INFO(f.tag());
        CHECK(same(par.rhs(a), ser.rhs(b)));
        for (int n = 0; n < 20; ++n) {
            par.step(a, 0.01, Scheme::rk4);
            ser.step(b, 0.01, Scheme::rk4);
        }
        CHECK(same(a, b));
        if (par.split_supported()) {
            for (int n = 0; n < 5; ++n) {
                par.step(a, 0.01, Scheme::split);
                ser.step(b, 0.01, Scheme::split);
            }
            CHECK(same(a, b));
        }
    }
}

TEST_CASE("stream kernels agree bitwise") {
    omp_set_num_threads(4);
    const Grid g{2.0 * std::numbers::pi, 64};
    const std::vector<BeamSpec> beams{{0.5, -0.5, 0.01, 0.01, 1, 0.0}, {0.5, 0.5, 0.01, -0.01, 1, 0.0}};
    StreamState a = multi_stream_state(g, 1.0, beams), b = a;
    StreamModel par(g, Discretization::spectral, KernelMode::openmp);
    StreamModel ser(g, Discretization::spectral, KernelMode::serial);
    for (int n = 0; n < 20; ++n) {
        par.step(a, 0.01);
        ser.step(b, 0.01);
    }
    CHECK(a.a == b.a);
    CHECK(a.v == b.v);
}

}  // TEST_SUITE
