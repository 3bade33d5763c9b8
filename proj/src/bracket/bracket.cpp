#include "hydroclose/bracket.hpp"
#include "hydroclose/cells.hpp"

#include <random>

namespace hydroclose {

std::size_t IdentityReport::failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.passed ? 0 : 1;
    return n;
}

void IdentityReport::append(const IdentityReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

HydroBracket km_bracket(std::size_t N) {
    if (N < 2) throw std::invalid_argument("KM bracket needs N >= 2");
    const std::size_t np = 2 * N - 2;
    HydroBracket b = HydroBracket::zero(N, np);
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t m = 0; m < N; ++m) {
            if (n + m == 0) continue;
            const std::size_t k = n + m - 1;
            b.alpha(n, m) = MultiPoly::variable(np, k) * Rational(static_cast<long>(n + m));
            if (n > 0) b.beta_at(n, m, k) = MultiPoly::constant(np, Rational(static_cast<long>(n)));
        }
    return b;
}

HydroBracket flat_bracket(const RationalMatrix& G) {
    if (!is_symmetric(G)) throw std::invalid_argument("flat metric must be symmetric");
    const std::size_t n = G.rows();
    HydroBracket b = HydroBracket::zero(n, n);
    b.alpha = to_poly_matrix(G, n);
    return b;
}

namespace {

// Schwartz–Zippel style test: a nonzero determinant at any integer point
// proves J nonsingular; vanishing at every trial point is reported as
// singular (failure probability bounded by (deg/97)^trials).
bool generically_invertible(const PolyMatrix& J, std::size_t nparams) {
    std::mt19937_64 rng(0xC0FFEE);
    std::uniform_int_distribution<long> pick(-97, 97);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<Rational> x(nparams);
        for (auto& v : x) v = pick(rng);
        RationalMatrix A(J.rows(), J.cols(), Rational(0));
        for (std::size_t i = 0; i < J.rows(); ++i)
            for (std::size_t j = 0; j < J.cols(); ++j) A(i, j) = eval(J(i, j), x);
        if (determinant(A) != 0) return true;
    }
    return false;
}

}  // namespace

HydroBracket transform(const HydroBracket& b, const PolyMatrix& J, Execution mode) {
    const std::size_t nu = b.nfields, np = b.nparams, ny = J.rows();
    if (J.cols() != nu || ny != nu) throw std::invalid_argument("Jacobian must be square with one column per field");
    for (std::size_t i = 0; i < ny; ++i)
        for (std::size_t j = 0; j < nu; ++j)
            if (J(i, j).nvars() != np) throw std::invalid_argument("Jacobian entries must live in the bracket parameters");
    if (!generically_invertible(J, np)) throw std::domain_error("singular Jacobian");

    // A_nl = Σ_m α_nm J_lm and C_nlj = Σ_m β_nmj J_lm.
    PolyMatrix A(nu, ny, MultiPoly(np));
    std::vector<MultiPoly> C(nu * ny * np, MultiPoly(np));
    for_cells(nu * ny, mode, [&](std::size_t cell) {
        const std::size_t n = cell / ny, l = cell % ny;
        for (std::size_t m = 0; m < nu; ++m) {
            if (J(l, m).is_zero()) continue;
            if (!b.alpha(n, m).is_zero()) A(n, l) += b.alpha(n, m) * J(l, m);
            for (std::size_t j = 0; j < np; ++j)
                if (!b.beta_at(n, m, j).is_zero()) C[(n * ny + l) * np + j] += b.beta_at(n, m, j) * J(l, m);
        }
    });

    std::vector<MultiPoly> dJ(ny * nu * np, MultiPoly(np));
    for_cells(ny * nu, mode, [&](std::size_t cell) {
        const std::size_t k = cell / nu, n = cell % nu;
        for (std::size_t j = 0; j < np; ++j) dJ[cell * np + j] = diff(J(k, n), j);
    });

    HydroBracket out = HydroBracket::zero(ny, np);
    for_cells(ny * ny, mode, [&](std::size_t cell) {
        const std::size_t k = cell / ny, l = cell % ny;
        for (std::size_t n = 0; n < nu; ++n) {
            if (!J(k, n).is_zero() && !A(n, l).is_zero()) out.alpha(k, l) += J(k, n) * A(n, l);
            for (std::size_t j = 0; j < np; ++j) {
                MultiPoly& t = out.beta_at(k, l, j);
                const MultiPoly& d = dJ[(k * nu + n) * np + j];
                if (!d.is_zero() && !A(n, l).is_zero()) t += d * A(n, l);
                const MultiPoly& c = C[(n * ny + l) * np + j];
                if (!J(k, n).is_zero() && !c.is_zero()) t += J(k, n) * c;
            }
        }
    });
    return out;
}

HydroBracket reparameterize(const HydroBracket& b, std::span<const MultiPoly> images) {
    if (images.size() != b.nparams) throw std::invalid_argument("need one image per parameter");
    if (images.empty()) return b;
    const std::size_t ny = images.front().nvars();
    for (const auto& im : images)
        if (im.nvars() != ny) throw std::invalid_argument("parameter images disagree on variable count");

    std::vector<std::vector<MultiPoly>> dimg(b.nparams);
    for (std::size_t j = 0; j < b.nparams; ++j)
        for (std::size_t i = 0; i < ny; ++i) dimg[j].push_back(diff(images[j], i));

    HydroBracket out = HydroBracket::zero(b.nfields, ny);
    for (std::size_t n = 0; n < b.nfields; ++n)
        for (std::size_t m = 0; m < b.nfields; ++m) {
            out.alpha(n, m) = compose(b.alpha(n, m), images);
            for (std::size_t j = 0; j < b.nparams; ++j) {
                const MultiPoly& bj = b.beta_at(n, m, j);
                if (bj.is_zero()) continue;
                const MultiPoly c = compose(bj, images);
                for (std::size_t i = 0; i < ny; ++i)
                    if (!dimg[j][i].is_zero()) out.beta_at(n, m, i) += c * dimg[j][i];
            }
        }
    return out;
}

namespace {

std::string cell(const std::string& what, std::size_t n, std::size_t m) {
    return what + "[" + std::to_string(n) + "," + std::to_string(m) + "]";
}

std::string cell(const std::string& what, std::size_t n, std::size_t m, std::size_t j) {
    return what + "[" + std::to_string(n) + "," + std::to_string(m) + ";" + std::to_string(j) + "]";
}

IdentityCheck zero_check(std::string name, const MultiPoly& residual, const std::vector<std::string>& names) {
    IdentityCheck c{std::move(name), residual.is_zero(), {}};
    if (!c.passed) c.residual = to_string(residual, names);
    return c;
}

}  // namespace

IdentityReport check_invariants(const HydroBracket& b, const std::vector<std::string>& names) {
    IdentityReport r;
    for (std::size_t n = 0; n < b.nfields; ++n)
        for (std::size_t m = n + 1; m < b.nfields; ++m)
            r.checks.push_back(zero_check(cell("alpha-symmetry", n, m), b.alpha(n, m) - b.alpha(m, n), names));
    for (std::size_t n = 0; n < b.nfields; ++n)
        for (std::size_t m = n; m < b.nfields; ++m)
            for (std::size_t j = 0; j < b.nparams; ++j) {
                MultiPoly res = diff(b.alpha(n, m), j) - b.beta_at(n, m, j) - b.beta_at(m, n, j);
                r.checks.push_back(zero_check(cell("antisymmetry", n, m, j), res, names));
            }
    return r;
}

IdentityReport compare_brackets(const HydroBracket& lhs, const HydroBracket& rhs, const std::string& label,
                                const std::vector<std::string>& names, Execution mode) {
    if (lhs.nfields != rhs.nfields || lhs.nparams != rhs.nparams)
        throw std::invalid_argument("brackets have different shapes");
    const std::size_t nf = lhs.nfields, np = lhs.nparams;
    IdentityReport r;
    std::vector<IdentityCheck> alpha(nf * nf), beta(nf * nf * np);
    for_cells(nf * nf, mode, [&](std::size_t c) {
        const std::size_t n = c / nf, m = c % nf;
        alpha[c] = zero_check(cell(label + "-alpha", n, m), lhs.alpha(n, m) - rhs.alpha(n, m), names);
        for (std::size_t j = 0; j < np; ++j)
            beta[c * np + j] =
                zero_check(cell(label + "-beta", n, m, j), lhs.beta_at(n, m, j) - rhs.beta_at(n, m, j), names);
    });
    r.checks = std::move(alpha);
    r.checks.insert(r.checks.end(), beta.begin(), beta.end());
    return r;
}

RationalMatrix full_metric(const ClosureFamily& family) {
    return direct_sum(offdiagonal_block_identity(1), family.metric.g);
}

Signature signature(const Metric& g) { return signature_of(g.g); }

Signature full_signature(const ClosureFamily& family) { return signature_of(full_metric(family)); }

}  // namespace hydroclose
