#include "hydroclose/closures.hpp"
#include "hydroclose/moments.hpp"

namespace hydroclose {

MultiPoly quadratic_mu1(const RationalMatrix& g) {
    const RationalMatrix ginv = inverse(g);
    const std::size_t nv = g.rows();
    MultiPoly p(nv);
    for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = 0; j < nv; ++j) {
            if (ginv(i, j) == 0) continue;
            Exponents e(nv, 0);
            ++e[i];
            ++e[j];
            Rational c = ginv(i, j) / 2;
            p.add_term(e, c);
        }
    return p;
}

std::vector<MultiPoly> generate_closure_from_mu2(const MultiPoly& mu2, const RationalMatrix& g, GammaRule rule,
                                                 int n_max, const Rational& lambda, const std::optional<MultiPoly>& mu1) {
    const std::size_t nv = g.rows();
    if (!g.square()) throw std::invalid_argument("metric must be square");
    if (mu2.nvars() != nv) throw std::invalid_argument("mu2 and metric disagree on the variable count");
    if (determinant(g) == 0) throw std::domain_error("singular metric");
    if (n_max < 0) throw std::invalid_argument("negative n_max");

    std::vector<MultiPoly> mu;
    mu.push_back(MultiPoly::constant(nv, Rational(1)));
    mu.push_back(mu1 ? *mu1 : quadratic_mu1(g));
    if (mu[1].nvars() != nv) throw std::invalid_argument("mu1 override has the wrong variable count");
    mu.push_back(mu2);

    auto gamma = [&](std::size_t n) -> MultiPoly {
        switch (rule) {
            case GammaRule::zero:
                return MultiPoly(nv);
            case GammaRule::waterbag: {
                MultiPoly r = MultiPoly::constant(nv, rpow(lambda, static_cast<int>(n)));
                if (n >= 1) r -= mu[n - 1] * (lambda * static_cast<long>(n));
                return r;
            }
            case GammaRule::euler:
                break;
        }
        return gamma_n(mu[n], static_cast<unsigned>(n));
    };

    // g ∂μ₂ is reused by every step.
    std::vector<MultiPoly> g_dmu2(nv, MultiPoly(nv));
    for (std::size_t k = 0; k < nv; ++k)
        for (std::size_t l = 0; l < nv; ++l)
            if (g(k, l) != 0) g_dmu2[k] += diff(mu2, l) * g(k, l);

    const MultiPoly gamma2 = gamma(2);
    for (std::size_t n = 2; static_cast<int>(n) < n_max; ++n) {
        MultiPoly next = mu[1] * gamma(n) * Rational(2) + mu[n - 1] * gamma2 * Rational(static_cast<long>(n));
        for (std::size_t k = 0; k < nv; ++k) next += diff(mu[n], k) * g_dmu2[k];
        next *= make_rational(1, static_cast<long>(n) + 2);
        mu.push_back(std::move(next));
    }
    mu.resize(static_cast<std::size_t>(n_max) + 1, MultiPoly(nv));
    return mu;
}

ClosureFamily make_generic(const MultiPoly& mu2, const RationalMatrix& g, GammaRule rule, const Rational& lambda,
                           const std::optional<MultiPoly>& mu1) {
    const std::size_t nv = g.rows();
    ClosureFamily f;
    f.kind = FamilyKind::generic;
    f.nfields = nv + 2;
    f.metric = make_metric(g);
    f.names = indexed_names("nu", nv);
    f.mu = generate_closure_from_mu2(mu2, g, rule, static_cast<int>(2 * f.nfields - 3), lambda, mu1);
    f.gamma = gamma_sequence(f.mu);
    f.params = GenericParams{mu2, rule, lambda};
    return f;
}

GeneratorSeed generator_seed(const ClosureFamily& family) {
    if (family.mu.size() < 3) throw std::invalid_argument("family has no second moment to seed from");
    GeneratorSeed s{family.mu[2], family.metric.g, GammaRule::zero, Rational(0)};
    if (family.kind == FamilyKind::waterbag) {
        s.rule = GammaRule::waterbag;
        s.lambda = waterbag_lambda(std::get<WaterbagParams>(family.params).heights);
    } else if (family.kind == FamilyKind::generic) {
        const auto& p = std::get<GenericParams>(family.params);
        s.rule = p.rule;
        s.lambda = p.lambda;
    }
    return s;
}

}  // namespace hydroclose
