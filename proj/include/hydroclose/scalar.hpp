#pragma once

#include "hydroclose/multipoly.hpp"
#include "hydroclose/rational.hpp"

#include <stdexcept>
#include <type_traits>

namespace hydroclose {

// Ring helpers shared by the numeric (double), exact (Rational) and symbolic
// (MultiPoly) instantiations of the moment formulas.

inline double one_like(double) { return 1.0; }
inline Rational one_like(const Rational&) { return Rational(1); }
inline MultiPoly one_like(const MultiPoly& p) { return MultiPoly::constant(p.nvars(), Rational(1)); }

inline double zero_like(double) { return 0.0; }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline MultiPoly zero_like(const MultiPoly& p) { return MultiPoly(p.nvars()); }

inline double scale(double x, const Rational& c) { return x * c.get_d(); }
inline Rational scale(const Rational& x, const Rational& c) { return x * c; }
inline MultiPoly scale(const MultiPoly& x, const Rational& c) { return x * c; }

template <class T>
T ipow(const T& x, unsigned e) {
    T r = one_like(x);
    for (unsigned k = 0; k < e; ++k) r = r * x;
    return r;
}

template <class T>
inline constexpr bool is_ordered_scalar_v = std::is_same_v<T, double> || std::is_same_v<T, Rational>;

// Density positivity; symbolic densities cannot be checked and pass through.
template <class T>
void require_positive_density(const T& rho) {
    if constexpr (is_ordered_scalar_v<T>) {
        if (!(rho > 0)) throw std::domain_error("nonpositive density");
    }
}

template <class T>
T reciprocal(const T& x) {
    static_assert(is_ordered_scalar_v<T>, "reciprocal needs a field element");
    if (x == 0) throw std::domain_error("division by zero");
    return T(1) / x;
}

}  // namespace hydroclose
