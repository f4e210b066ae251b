#pragma once

#include "tilinglab/core/matrix.hpp"
#include "tilinglab/core/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tilinglab {

inline constexpr std::size_t kDefaultEnumerationCap = 10'000'000;

/// Translated lattice basis * Z^d + offset. The columns of the basis are the generators.
class Lattice {
public:
    /// Throws SingularLatticeError if the basis is singular, DomainError on shape mismatch.
    explicit Lattice(Matrix basis, Vec offset = {});

    static Lattice integer(std::size_t dim);
    static Lattice diagonal(const Vec& diag);

    std::size_t dim() const noexcept { return basis_.rows(); }
    const Matrix& basis() const noexcept { return basis_; }
    const Matrix& inverse_basis() const noexcept { return inverse_; }
    const Vec& offset() const noexcept { return offset_; }
    bool has_offset() const;

    /// Integer coordinates of x relative to the basis, after removing the offset.
    Vec coordinates(const Vec& x) const;
    bool contains(const Vec& x) const;

    Lattice translated(const Vec& shift) const;
    /// Same group, offset dropped.
    Lattice group() const;

    bool operator==(const Lattice& other) const;

private:
    Matrix basis_;
    Matrix inverse_;
    Vec offset_;
};

/// Finite set of points restricted to the closed window [lo, hi]. When exact is false the
/// coordinates live in real_points instead of points.
struct PointPatch {
    std::size_t dim = 0;
    std::vector<Vec> points;
    Vec lo;
    Vec hi;
    bool exact = true;
    std::vector<std::vector<double>> real_points;

    std::size_t size() const noexcept { return exact ? points.size() : real_points.size(); }
};

/// Inverse-transpose of the basis. Rejects translated lattices.
Lattice dual_lattice(const Lattice& lattice);

/// Exact determinant of the basis (signed). Density is 1/|det|.
Rational lattice_determinant(const Lattice& lattice);

/// Points of the lattice in the closed box [lo, hi], lexicographically ordered.
std::vector<Vec> enumerate_box(const Lattice& lattice, const Vec& lo, const Vec& hi,
                               std::size_t cap = kDefaultEnumerationCap);

/// Points with ||p - center||_inf <= radius, lexicographically ordered.
PointPatch enumerate_points(const Lattice& lattice, const Vec& center, const Rational& radius,
                            std::size_t cap = kDefaultEnumerationCap);

/// Representative of x modulo the lattice group in basis * [0,1)^d. The offset is ignored,
/// so the map is idempotent and x - result always lies in basis * Z^d.
Vec project_to_fundamental(const Lattice& lattice, const Vec& x);

/// Sum of offset-free lattices (the group generated by all of them).
Lattice lattice_sum(std::span<const Lattice> lattices);
/// Intersection of offset-free rational lattices, via the dual of the sum of duals.
Lattice lattice_intersection(std::span<const Lattice> lattices);

} // namespace tilinglab
