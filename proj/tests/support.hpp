#pragma once

// Shared helpers for the unit tests and the acceptance binary: golden-file
// reading, random exact inputs and the closed-form Burby inversion.

#include "hydroclose/closures.hpp"
#include "hydroclose/multipoly.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hctest {

using hydroclose::MultiPoly;
using hydroclose::Rational;

inline std::filesystem::path golden_dir() { return HYDROCLOSE_GOLDEN_DIR; }

// "label = expression" lines; '#' starts a comment line.
inline std::vector<std::pair<std::string, std::string>> read_golden(const std::string& file) {
    std::ifstream in(golden_dir() / file);
    if (!in) throw std::runtime_error("missing golden file " + file);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find(" = ");
        if (eq == std::string::npos) throw std::runtime_error("bad golden line: " + line);
        out.emplace_back(line.substr(0, eq), line.substr(eq + 3));
    }
    return out;
}

// Golden Burby list μ₁..μ_m, parsed over nu1..nu_m.
inline std::vector<MultiPoly> golden_burby(int m) {
    const auto names = hydroclose::indexed_names("nu", static_cast<std::size_t>(m));
    std::vector<MultiPoly> mu;
    for (const auto& [label, text] : read_golden("burby_m" + std::to_string(m) + ".txt")) {
        if (label != "mu_" + std::to_string(mu.size() + 1)) throw std::runtime_error("unexpected label " + label);
        mu.push_back(hydroclose::parse_poly(text, names));
    }
    return mu;
}

// Four-field golden polynomials over (G2, G3, kappa), keyed by label.
inline std::map<std::string, MultiPoly> golden_fourfield() {
    const std::vector<std::string> names{"G2", "G3", "kappa"};
    std::map<std::string, MultiPoly> out;
    for (const auto& [label, text] : read_golden("fourfield.txt")) out[label] = hydroclose::parse_poly(text, names);
    return out;
}

// Fix kappa and drop back to (G2, G3).
inline MultiPoly at_kappa(const MultiPoly& p, const Rational& kappa) {
    const std::vector<MultiPoly> images{MultiPoly::variable(2, 0), MultiPoly::variable(2, 1),
                                        MultiPoly::constant(2, kappa)};
    return hydroclose::compose(p, images);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

    // p/q with |p| ≤ num_max, 1 ≤ q ≤ den_max.
    Rational rational(int num_max = 9, int den_max = 5) {
        Rational r(integer(-num_max, num_max), integer(1, den_max));
        r.canonicalize();
        return r;
    }
    Rational nonzero_rational(int num_max = 9, int den_max = 5) {
        for (;;) {
            Rational r = rational(num_max, den_max);
            if (r != 0) return r;
        }
    }

    MultiPoly poly(std::size_t nvars, int max_degree, int max_terms) {
        MultiPoly p(nvars);
        const int terms = integer(0, max_terms);
        for (int t = 0; t < terms; ++t) {
            hydroclose::Exponents e(nvars, 0);
            int budget = integer(0, max_degree);
            for (std::size_t k = 0; k < nvars && budget > 0; ++k) {
                const int d = integer(0, budget);
                e[k] = static_cast<unsigned>(d);
                budget -= d;
            }
            p += MultiPoly::monomial(rational(), e);
        }
        return p;
    }

    std::vector<Rational> rational_point(std::size_t n, int num_max = 9, int den_max = 5) {
        std::vector<Rational> x;
        for (std::size_t i = 0; i < n; ++i) x.push_back(rational(num_max, den_max));
        return x;
    }

private:
    std::mt19937_64 gen_;
};

// Closed-form Casimir inversion ν(μ) for Burby levels 2..5, valid for
// μ_m > 0. Written out term by term, independent of burby_invert.
inline std::vector<double> closed_form_burby_inverse(int m, const std::vector<double>& mu) {
    auto p = [](double x, double e) { return std::pow(x, e); };
    switch (m) {
        case 2: {
            const double m1 = mu[0], m2 = mu[1];
            return {p(3, 2.0 / 3) * m1 / (3 * p(m2, 1.0 / 3)), p(3, 1.0 / 3) * p(m2, 1.0 / 3)};
        }
        case 3: {
            const double m1 = mu[0], m2 = mu[1], m3 = mu[2];
            return {std::sqrt(2.0) * (8 * m1 * m3 - m2 * m2) / (16 * p(m3, 5.0 / 4)), m2 / (2 * std::sqrt(m3)),
                    std::sqrt(2.0) * p(m3, 1.0 / 4)};
        }
        case 4: {
            const double m1 = mu[0], m2 = mu[1], m3 = mu[2], m4 = mu[3];
            return {p(5, 4.0 / 5) * (25 * m1 * m4 * m4 - m3 * (5 * m2 * m4 - m3 * m3)) / (125 * p(m4, 11.0 / 5)),
                    p(5, 3.0 / 5) * (5 * m2 * m4 - m3 * m3) / (25 * p(m4, 7.0 / 5)),
                    p(5, 2.0 / 5) * m3 / (5 * p(m4, 3.0 / 5)), p(5, 1.0 / 5) * p(m4, 1.0 / 5)};
        }
        case 5: {
            const double m1 = mu[0], m2 = mu[1], m3 = mu[2], m4 = mu[3], m5 = mu[4];
            const double n1 = 5184 * m1 * m5 * m5 * m5 - 864 * m2 * m4 * m5 * m5 - 432 * m3 * m3 * m5 * m5 +
                              504 * m3 * m4 * m4 * m5 - 91 * m4 * m4 * m4 * m4;
            return {p(6, 5.0 / 6) * n1 / (31104 * p(m5, 19.0 / 6)),
                    p(6, 2.0 / 3) * (27 * m2 * m5 * m5 - m4 * (9 * m3 * m5 - 2 * m4 * m4)) / (162 * p(m5, 7.0 / 3)),
                    std::sqrt(6.0) * (4 * m3 * m5 - m4 * m4) / (24 * p(m5, 1.5)), p(6, 1.0 / 3) * m4 / (6 * p(m5, 2.0 / 3)),
                    p(6, 1.0 / 6) * p(m5, 1.0 / 6)};
        }
    }
    throw std::invalid_argument("closed-form inversion only for levels 2..5");
}

inline double max_relative_error(const std::vector<double>& got, const std::vector<double>& want) {
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
        err = std::max(err, std::abs(got[i] - want[i]));
        scale = std::max(scale, std::abs(want[i]));
    }
    return scale > 0 ? err / scale : err;
}

}  // namespace hctest
