#include "tilinglab/core/lattice.hpp"

#include "tilinglab/core/errors.hpp"

#include <utility>

namespace tilinglab {

Lattice::Lattice(Matrix basis, Vec offset) : basis_(std::move(basis)), offset_(std::move(offset))
{
    if (!basis_.is_square() || basis_.rows() == 0) throw DomainError("lattice basis must be a non-empty square matrix");
    if (offset_.empty()) offset_ = zero_vec(basis_.rows());
    if (offset_.size() != basis_.rows()) throw DomainError("lattice offset has the wrong dimension");
    inverse_ = basis_.inverse();
}

Lattice Lattice::integer(std::size_t dim) { return Lattice(Matrix::identity(dim)); }

Lattice Lattice::diagonal(const Vec& diag) { return Lattice(Matrix::diagonal(diag)); }

bool Lattice::has_offset() const
{
    for (const auto& c : offset_)
        if (c != 0) return true;
    return false;
}

Vec Lattice::coordinates(const Vec& x) const { return inverse_.apply(sub(x, offset_)); }

bool Lattice::contains(const Vec& x) const
{
    if (x.size() != dim()) throw DomainError("point has the wrong dimension");
    for (const auto& c : coordinates(x))
        if (!is_integer(c)) return false;
    return true;
}

Lattice Lattice::translated(const Vec& shift) const { return Lattice(basis_, add(offset_, shift)); }

Lattice Lattice::group() const { return Lattice(basis_); }

bool Lattice::operator==(const Lattice& other) const
{
    if (dim() != other.dim()) return false;
    if (column_hermite_form(basis_) != column_hermite_form(other.basis_)) return false;
    return group().contains(sub(offset_, other.offset_));
}

Lattice dual_lattice(const Lattice& lattice)
{
    if (lattice.has_offset()) throw DomainError("dual of a translated lattice is undefined");
    return Lattice(lattice.inverse_basis().transpose());
}

Rational lattice_determinant(const Lattice& lattice) { return lattice.basis().determinant(); }

namespace {

void enumerate_rec(const Matrix& h, const Vec& offset, const Vec& lo, const Vec& hi, std::size_t row, Vec& point,
                   std::vector<Vec>& out, std::size_t cap)
{
    const std::size_t d = h.rows();
    if (row == d) {
        if (out.size() >= cap) throw CapacityError("lattice enumeration exceeded the point cap", cap);
        out.push_back(point);
        return;
    }
    // point[row] = base + h(row,row) * z, where base depends on earlier coordinates only
    Rational base = offset[row];
    // recover the integer coefficients already chosen from the partial point
    for (std::size_t j = 0; j < row; ++j) base += h(row, j) * point[d + j];
    Rational step = h(row, row);
    Integer zlo = ceil_of((lo[row] - base) / step);
    Integer zhi = floor_of((hi[row] - base) / step);
    for (Integer z = zlo; z <= zhi; ++z) {
        point[row] = base + step * Rational(z);
        point[d + row] = Rational(z);
        enumerate_rec(h, offset, lo, hi, row + 1, point, out, cap);
    }
}

} // namespace

std::vector<Vec> enumerate_box(const Lattice& lattice, const Vec& lo, const Vec& hi, std::size_t cap)
{
    const std::size_t d = lattice.dim();
    if (lo.size() != d || hi.size() != d) throw DomainError("box has the wrong dimension");
    for (std::size_t i = 0; i < d; ++i)
        if (lo[i] > hi[i]) return {};
    Matrix h = column_hermite_form(lattice.basis());
    std::vector<Vec> raw;
    Vec scratch(2 * d);
    enumerate_rec(h, lattice.offset(), lo, hi, 0, scratch, raw, cap);
    for (auto& p : raw) p.resize(d);
    return raw;
}

PointPatch enumerate_points(const Lattice& lattice, const Vec& center, const Rational& radius, std::size_t cap)
{
    if (radius < 0) throw DomainError("negative enumeration radius");
    PointPatch patch;
    patch.dim = lattice.dim();
    patch.lo = center;
    patch.hi = center;
    for (std::size_t i = 0; i < patch.dim; ++i) {
        patch.lo[i] -= radius;
        patch.hi[i] += radius;
    }
    patch.points = enumerate_box(lattice, patch.lo, patch.hi, cap);
    return patch;
}

Vec project_to_fundamental(const Lattice& lattice, const Vec& x)
{
    Vec c = lattice.inverse_basis().apply(x);
    for (auto& v : c) v = Rational(floor_of(v));
    return sub(x, lattice.basis().apply(c));
}

Lattice lattice_sum(std::span<const Lattice> lattices)
{
    if (lattices.empty()) throw DomainError("empty lattice list");
    const std::size_t d = lattices.front().dim();
    std::vector<Vec> columns;
    for (const auto& l : lattices) {
        if (l.dim() != d) throw DomainError("lattices of different dimension");
        if (l.has_offset()) throw DomainError("lattice sum requires offset-free lattices");
        for (std::size_t j = 0; j < d; ++j) columns.push_back(l.basis().column(j));
    }
    return Lattice(column_hermite_form(Matrix::from_columns(columns)));
}

Lattice lattice_intersection(std::span<const Lattice> lattices)
{
    std::vector<Lattice> duals;
    duals.reserve(lattices.size());
    for (const auto& l : lattices) duals.push_back(dual_lattice(l));
    Lattice sum = lattice_sum(duals);
    return Lattice(column_hermite_form(dual_lattice(sum).basis()));
}

} // namespace tilinglab
