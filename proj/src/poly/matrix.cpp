#include "hydroclose/matrix.hpp"

#include <utility>

namespace hydroclose {

RationalMatrix identity_matrix(std::size_t n) {
    RationalMatrix m(n, n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix transpose(const RationalMatrix& a) {
    RationalMatrix t(a.cols(), a.rows(), Rational(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    RationalMatrix c(a.rows(), b.cols(), Rational(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

bool is_symmetric(const RationalMatrix& a) {
    if (!a.square()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (a(i, j) != a(j, i)) return false;
    return true;
}

RationalMatrix direct_sum(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix m(a.rows() + b.rows(), a.cols() + b.cols(), Rational(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

Rational determinant(RationalMatrix a) {
    if (!a.square()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    Rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a(r, c) == 0) continue;
            Rational f = a(r, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
        }
    }
    return det;
}

RationalMatrix inverse(const RationalMatrix& m) {
    if (!m.square()) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix a = m;
    RationalMatrix inv = identity_matrix(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) throw std::domain_error("singular matrix");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        Rational piv = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c) == 0) continue;
            Rational f = a(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

std::string to_string(const Signature& s) {
    return "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) + ")";
}

namespace {

// a <- E a Eᵀ and t <- E t for the elementary E = I + f e_dst e_srcᵀ.
void add_multiple(RationalMatrix& a, RationalMatrix& t, std::size_t dst, std::size_t src, const Rational& f) {
    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < n; ++j) a(dst, j) += f * a(src, j);
    for (std::size_t i = 0; i < n; ++i) a(i, dst) += f * a(i, src);
    for (std::size_t j = 0; j < t.cols(); ++j) t(dst, j) += f * t(src, j);
}

void swap_index(RationalMatrix& a, RationalMatrix& t, std::size_t i, std::size_t j) {
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
    for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
    for (std::size_t k = 0; k < t.cols(); ++k) std::swap(t(i, k), t(j, k));
}

}  // namespace

Congruence congruence_diagonalize(const RationalMatrix& g) {
    if (!is_symmetric(g)) throw std::domain_error("congruence of a non-symmetric matrix");
    const std::size_t n = g.rows();
    RationalMatrix a = g;
    RationalMatrix t = identity_matrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a(i, i) == 0) {
            std::size_t j = i + 1;
            while (j < n && a(j, j) == 0) ++j;
            if (j < n) {
                swap_index(a, t, i, j);
            } else {
                // All remaining diagonal entries vanish: fold in an
                // off-diagonal partner, giving pivot 2 a(i,j).
                j = i + 1;
                while (j < n && a(i, j) == 0) ++j;
                if (j == n) throw std::domain_error("degenerate metric: zero pivot with no partner");
                add_multiple(a, t, i, j, Rational(1));
            }
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (a(j, i) == 0) continue;
            Rational f = -a(j, i) / a(i, i);
            add_multiple(a, t, j, i, f);
        }
    }
    Congruence c{std::move(t), {}};
    c.diagonal.reserve(n);
    for (std::size_t i = 0; i < n; ++i) c.diagonal.push_back(a(i, i));
    return c;
}

Signature signature_of(const RationalMatrix& g) {
    Signature s;
    for (const Rational& d : congruence_diagonalize(g).diagonal) (d > 0 ? s.positive : s.negative)++;
    return s;
}

PolyMatrix to_poly_matrix(const RationalMatrix& a, std::size_t nvars) {
    PolyMatrix m(a.rows(), a.cols(), MultiPoly(nvars));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = MultiPoly::constant(nvars, a(i, j));
    return m;
}

}  // namespace hydroclose
