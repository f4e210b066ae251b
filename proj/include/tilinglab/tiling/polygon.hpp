#pragma once

#include "tilinglab/fourier/box_tile.hpp"
#include "tilinglab/fourier/edge_measure.hpp"
#include "tilinglab/tiling/translation_set.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tilinglab {

/// Simple polygon with rational vertices in counterclockwise order.
class Polygon2D {
public:
    /// Throws DomainError unless the polygon is simple with positive signed area.
    explicit Polygon2D(std::vector<Vec> vertices);

    const std::vector<Vec>& vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    Rational area() const;
    /// Half-open point location: boundary points on left or bottom edges count as inside.
    bool contains(const Vec& x) const;

private:
    std::vector<Vec> vertices_;
};

/// Polygon with floating-point vertices in counterclockwise order.
struct RealPolygon {
    std::vector<Real2> vertices;

    double area() const;
    bool contains(const Real2& x) const;
};

RealPolygon to_real(const Polygon2D& p);
/// Regular hexagon of the given side centred at the origin, with a vertex on the positive x-axis.
RealPolygon regular_hexagon(double side = 1.0);

/// Planar lattice with generators b1, b2 and an offset, in floating point.
struct RealLattice2D {
    Real2 b1{};
    Real2 b2{};
    Real2 offset{};

    std::vector<Real2> points_in_box(const Real2& lo, const Real2& hi) const;
};

/// Lattice that tiles with regular_hexagon(side).
RealLattice2D hexagonal_lattice(double side = 1.0);

bool central_symmetry_check(const Polygon2D& p);
bool central_symmetry_check(const RealPolygon& p, double tol = 1e-12);

struct EdgeDirectionResidual {
    Real2 direction{};
    /// Total length inside the window where translated + and - edges do not cancel.
    double residual = 0.0;
    std::size_t lines = 0;
    std::optional<Real2> witness;
};

struct EdgeCancellationReport {
    bool passed = false;
    std::vector<EdgeDirectionResidual> directions;
    double max_residual = 0.0;
    double tol = 0.0;
    Rational expected_level = 1;
    std::size_t samples = 0;
    std::size_t coverage_mismatches = 0;
    std::optional<Real2> coverage_witness;
    long witness_coverage = 0;
};

/// For each pair of opposite edges, sums the translated edge measures line by line inside the
/// window; also counts translated copies over quasi-random points and compares with the
/// expected level. Requires a centrally symmetric polygon.
EdgeCancellationReport verify_polygon_edge_cancellation(const Polygon2D& p, const TranslationSet& t, const Vec& lo,
                                                        const Vec& hi, std::size_t samples, double tol,
                                                        const Rational& level = 1, std::uint64_t seed = 0);
EdgeCancellationReport verify_polygon_edge_cancellation(const RealPolygon& p, const RealLattice2D& lattice,
                                                        const Real2& lo, const Real2& hi, std::size_t samples,
                                                        double tol, long level = 1, std::uint64_t seed = 0);

struct FaceBalance {
    /// Outward normal direction u (first nonzero coordinate positive).
    Vec direction;
    /// Facet measure with outward normal +u and -u, in units of |direction|.
    Rational plus;
    Rational minus;
    double plus_measure = 0.0;
    double minus_measure = 0.0;
    bool balanced = true;
};

std::vector<FaceBalance> face_balance_check(const Polygon2D& p);
std::vector<FaceBalance> face_balance_check(const BoxUnionTile& tile);
bool all_balanced(const std::vector<FaceBalance>& balance);

} // namespace tilinglab
