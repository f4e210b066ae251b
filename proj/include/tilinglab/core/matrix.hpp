#pragma once

#include "tilinglab/core/rational.hpp"

#include <cstddef>
#include <vector>

namespace tilinglab {

/// Dense exact rational matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t dim);
    static Matrix diagonal(const Vec& diag);
    static Matrix from_rows(const std::vector<Vec>& rows);
    static Matrix from_columns(const std::vector<Vec>& columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec column(std::size_t j) const;
    std::vector<Vec> to_rows() const;

    Matrix transpose() const;
    /// Throws SingularLatticeError when the matrix is singular.
    Matrix inverse() const;
    Rational determinant() const;

    Vec apply(const Vec& x) const;
    Matrix operator*(const Matrix& other) const;

    bool operator==(const Matrix& other) const;
    bool operator!=(const Matrix& other) const { return !(*this == other); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Column-style Hermite normal form of a full-row-rank generator matrix
/// (d rows, n >= d columns). The result is a d x d lower-triangular basis with
/// positive diagonal that generates the same additive group as the columns.
Matrix column_hermite_form(const Matrix& generators);

} // namespace tilinglab
