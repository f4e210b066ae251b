#pragma once

#include "tilinglab/core/lattice.hpp"
#include "tilinglab/fourier/kernels.hpp"

#include <array>
#include <optional>
#include <vector>

namespace tilinglab {

using Real2 = std::array<double, 2>;

/// Arc length on the segment of direction e centred at center + tau/2, minus the same
/// segment centred at center - tau/2.
struct EdgeMeasure {
    Real2 e{};
    Real2 tau{};
    Real2 center{};
    /// Present when the measure was built from rational data.
    std::optional<std::array<Vec, 3>> exact;

    static EdgeMeasure real(Real2 e, Real2 tau, Real2 center = {0.0, 0.0});
    static EdgeMeasure rational(const Vec& e, const Vec& tau, const Vec& center = {});
};

/// Lines {x : <x, normal> in offset + step Z}, minus the line through the origin when
/// exclude_through_origin is set (only meaningful for offset 0).
struct LineFamily {
    Real2 normal{};
    double step = 1.0;
    double offset = 0.0;
    bool exclude_through_origin = false;
    std::optional<Vec> exact_normal;
    Rational exact_step = 1;
    Rational exact_offset = 0;

    /// Euclidean distance between consecutive lines.
    double spacing() const;
    bool is_exact() const { return exact_normal.has_value(); }
};

struct ZeroSetGrid {
    std::vector<LineFamily> families;
};

ComplexValue ft_edge_measure(const EdgeMeasure& mu, const Real2& xi);

Real2 geometric_inverse(const Real2& u);
Vec geometric_inverse(const Vec& u);

/// The tau*-family (every line) followed by the e*-family (origin line excluded).
ZeroSetGrid zero_grid_of_edge(const EdgeMeasure& mu);

bool on_family(const LineFamily& f, const Real2& x, double tol = 1e-9);
bool on_family(const LineFamily& f, const Vec& x);
bool on_grid(const ZeroSetGrid& g, const Real2& x, double tol = 1e-9);

/// Points of the closed window lying on at least one line of every grid. Candidates are the
/// crossings of non-parallel families; when every family is exact the result is exact.
PointPatch intersect_grids(const std::vector<ZeroSetGrid>& grids, const Vec& lo, const Vec& hi,
                           std::size_t cap = kDefaultEnumerationCap);

/// Deterministic sample of points on the lines of a grid inside [-radius, radius]^2.
std::vector<Real2> sample_grid_points(const ZeroSetGrid& grid, double radius, std::size_t per_line);

} // namespace tilinglab
