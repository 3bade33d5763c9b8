#pragma once

#include "hydroclose/multipoly.hpp"
#include "hydroclose/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hydroclose {

// Small dense row-major matrix; element type is Rational or MultiPoly here.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using PolyMatrix = Matrix<MultiPoly>;

RationalMatrix identity_matrix(std::size_t n);
RationalMatrix transpose(const RationalMatrix& a);
RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
bool is_symmetric(const RationalMatrix& a);

// Block-diagonal a ⊕ b.
RationalMatrix direct_sum(const RationalMatrix& a, const RationalMatrix& b);

Rational determinant(RationalMatrix a);
// Throws std::domain_error when a is singular.
RationalMatrix inverse(const RationalMatrix& a);

struct Signature {
    int positive = 0;
    int negative = 0;
    bool operator==(const Signature&) const = default;
};

std::string to_string(const Signature& s);

// Exact symmetric congruence T g Tᵀ = diag(d) with T invertible rational.
struct Congruence {
    RationalMatrix transform;
    std::vector<Rational> diagonal;
};

// Throws std::domain_error when g is degenerate or not symmetric.
Congruence congruence_diagonalize(const RationalMatrix& g);

Signature signature_of(const RationalMatrix& g);

// Matrix entries as a constant-polynomial matrix over nvars variables.
PolyMatrix to_poly_matrix(const RationalMatrix& a, std::size_t nvars);

}  // namespace hydroclose
