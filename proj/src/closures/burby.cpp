#include "hydroclose/closures.hpp"
#include "hydroclose/moments.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace hydroclose {

namespace {

using SlotMemo = std::map<std::pair<int, int>, MultiPoly>;

// μ_k^{(L)} over the L+1 slots x₀..x_L, with μ₀^{(L)} = x₀ and
// μ_k^{(L)} = 0 for k > L.
const MultiPoly& slots(int L, int k, SlotMemo& memo) {
    auto key = std::make_pair(L, k);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    const std::size_t nv = static_cast<std::size_t>(L) + 1;
    MultiPoly r(nv);
    if (k == 0) {
        r = MultiPoly::variable(nv, 0);
    } else if (k == L) {
        Exponents e(nv, 0);
        e[static_cast<std::size_t>(L)] = static_cast<unsigned>(L + 1);
        r = MultiPoly::monomial(make_rational(1, L + 1), e);
    } else if (k < L) {
        const int n = k, m = L;
        const int inner = m - n - 1;
        const MultiPoly top = MultiPoly::variable(nv, static_cast<std::size_t>(m));
        for (int j = 0; j <= n && j <= inner; ++j) {
            MultiPoly shifted = embed(slots(inner, j, memo), nv, static_cast<std::size_t>(n));
            r += shifted * pow(top, static_cast<unsigned>(n - j)) * binomial(static_cast<unsigned>(n), static_cast<unsigned>(j));
        }
    }
    return memo.emplace(key, std::move(r)).first->second;
}

MultiPoly drop_first_slot(const MultiPoly& p) {
    MultiPoly r(p.nvars() - 1);
    for (const auto& [e, c] : p.terms()) {
        if (e[0] != 0) throw std::logic_error("density slot appears in a moment of positive order");
        r.add_term(Exponents(e.begin() + 1, e.end()), c);
    }
    return r;
}

void check_range(int m, int n, int lo) {
    if (m < 1) throw std::out_of_range("Burby level must be at least 1");
    if (n < lo || n > m) throw std::out_of_range("moment index out of range for this level");
}

// Ordered tuples of length len from [lo, hi] summing to target.
void tuples(int len, int lo, int hi, int target, std::vector<unsigned>& counts, MultiPoly& acc) {
    if (len == 0) {
        if (target == 0) acc.add_term(counts, Rational(1));
        return;
    }
    for (int i = lo; i <= hi; ++i) {
        if (i > target) break;
        // Remaining entries are at least lo each.
        if (target - i < (len - 1) * lo) break;
        if (target - i > (len - 1) * hi) continue;
        ++counts[static_cast<std::size_t>(i)];
        tuples(len - 1, lo, hi, target - i, counts, acc);
        --counts[static_cast<std::size_t>(i)];
    }
}

}  // namespace

MultiPoly burby_mu_slots(int m, int n) {
    check_range(m, n, 0);
    SlotMemo memo;
    return slots(m, n, memo);
}

MultiPoly burby_mu(int m, int n) {
    check_range(m, n, 1);
    return drop_first_slot(burby_mu_slots(m, n));
}

MultiPoly burby_mu_closed(int m, int n) {
    check_range(m, n, 0);
    const std::size_t nv = static_cast<std::size_t>(m) + 1;
    MultiPoly acc(nv);
    std::vector<unsigned> counts(nv, 0);
    tuples(n + 1, n, m, n * (m + 1), counts, acc);
    return acc * make_rational(1, n + 1);
}

ClosureFamily make_burby(int m, BurbyBranch branch) {
    if (m < 1) throw std::invalid_argument("Burby level must be at least 1");
    const std::size_t nv = static_cast<std::size_t>(m);
    ClosureFamily f;
    f.kind = FamilyKind::burby;
    f.nfields = nv + 2;
    f.params = BurbyParams{m, branch};
    f.names = indexed_names("nu", nv);

    RationalMatrix g = antidiagonal_ones(nv);
    const bool minus = branch == BurbyBranch::minus;
    if (minus)
        for (std::size_t i = 0; i < nv; ++i) g(i, nv - 1 - i) = -1;
    f.metric = make_metric(g);

    SlotMemo memo;
    const std::size_t count = 2 * f.nfields - 2;
    f.mu.push_back(MultiPoly::constant(nv, Rational(1)));
    for (std::size_t n = 1; n < count; ++n) {
        if (n > nv) {
            f.mu.emplace_back(nv);
            continue;
        }
        MultiPoly p = drop_first_slot(slots(m, static_cast<int>(n), memo));
        if (minus && n % 2 == 1) p = -p;
        f.mu.push_back(std::move(p));
    }
    f.gamma = gamma_sequence(f.mu);
    return f;
}

MultiPoly burby_remainder(int m, int n) {
    check_range(m, n, 1);
    MultiPoly mu = burby_mu(m, n);
    std::map<std::size_t, MultiPoly> zero;
    zero.emplace(static_cast<std::size_t>(n - 1), MultiPoly(mu.nvars()));
    return substitute(mu, zero);
}

const BurbyInverseTables& burby_inverse_tables(int m) {
    static std::mutex lock;
    static std::map<int, std::unique_ptr<BurbyInverseTables>> cache;
    std::lock_guard<std::mutex> guard(lock);
    auto& slot = cache[m];
    if (!slot) {
        auto t = std::make_unique<BurbyInverseTables>();
        t->m = m;
        t->remainder.resize(static_cast<std::size_t>(m));
        for (int n = 1; n < m; ++n) t->remainder[static_cast<std::size_t>(n)] = CompiledPoly(burby_remainder(m, n));
        slot = std::move(t);
    }
    return *slot;
}

}  // namespace hydroclose
