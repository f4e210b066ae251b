#include "tilinglab/core/matrix.hpp"

#include "tilinglab/core/errors.hpp"

#include <utility>

namespace tilinglab {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

Matrix Matrix::identity(std::size_t dim)
{
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::diagonal(const Vec& diag)
{
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows)
{
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw DomainError("ragged matrix rows");
        for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& columns) { return from_rows(columns).transpose(); }

Vec Matrix::row(std::size_t i) const { return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

Vec Matrix::column(std::size_t j) const
{
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

std::vector<Vec> Matrix::to_rows() const
{
    std::vector<Vec> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Rational Matrix::determinant() const
{
    if (!is_square()) throw DomainError("determinant of a non-square matrix");
    Matrix a = *this;
    Rational det = 1;
    const std::size_t n = rows_;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a(r, col) == 0) continue;
            Rational f = a(r, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

Matrix Matrix::inverse() const
{
    if (!is_square()) throw DomainError("inverse of a non-square matrix");
    const std::size_t n = rows_;
    Matrix a = *this;
    Matrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col) == 0) ++pivot;
        if (pivot == n) throw SingularLatticeError("matrix is singular");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        }
        Rational p = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a(r, col) == 0) continue;
            Rational f = a(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

Vec Matrix::apply(const Vec& x) const
{
    if (x.size() != cols_) throw DomainError("dimension mismatch in matrix-vector product");
    Vec y(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (sgn((*this)(i, j)) != 0 && sgn(x[j]) != 0) y[i] += (*this)(i, j) * x[j];
    return y;
}

Matrix Matrix::operator*(const Matrix& other) const
{
    if (cols_ != other.rows_) throw DomainError("dimension mismatch in matrix product");
    Matrix p(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if ((*this)(i, k) == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) p(i, j) += (*this)(i, k) * other(k, j);
        }
    return p;
}

bool Matrix::operator==(const Matrix& other) const
{
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

Matrix column_hermite_form(const Matrix& generators)
{
    const std::size_t d = generators.rows();
    const std::size_t n = generators.cols();
    if (n < d) throw SingularLatticeError("fewer generators than dimensions");

    Integer denom = 1;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), generators(i, j).get_den_mpz_t());

    std::vector<std::vector<Integer>> m(d, std::vector<Integer>(n));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational scaled = generators(i, j) * Rational(denom);
            m[i][j] = scaled.get_num();
        }

    auto combine = [&](std::size_t ci, std::size_t cj, const Integer& s, const Integer& t, const Integer& u, const Integer& v) {
        // (col_i, col_j) <- (s col_i + t col_j, u col_i + v col_j)
        for (std::size_t r = 0; r < d; ++r) {
            Integer a = m[r][ci];
            Integer b = m[r][cj];
            m[r][ci] = s * a + t * b;
            m[r][cj] = u * a + v * b;
        }
    };

    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (m[i][j] == 0) continue;
            Integer a = m[i][i];
            Integer b = m[i][j];
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            Integer u = -b / g;
            Integer v = a / g;
            combine(i, j, s, t, u, v);
        }
        if (m[i][i] == 0) throw SingularLatticeError("generators do not span a full-rank lattice");
        if (m[i][i] < 0)
            for (std::size_t r = 0; r < d; ++r) m[r][i] = -m[r][i];
        for (std::size_t j = 0; j < i; ++j) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), m[i][j].get_mpz_t(), m[i][i].get_mpz_t());
            if (q == 0) continue;
            for (std::size_t r = 0; r < d; ++r) m[r][j] -= q * m[r][i];
        }
    }

    Matrix h(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Rational q(m[i][j], denom);
            q.canonicalize();
            h(i, j) = q;
        }
    return h;
}

} // namespace tilinglab
